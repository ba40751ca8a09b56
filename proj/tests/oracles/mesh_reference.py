#!/usr/bin/env python3
"""Regenerates the frozen mesh constants used by test_mesh.cpp.

Evaluates the sinh-stretched mesh closed forms with mpmath at 30 digits,
independently of the C++ implementation.
"""
from mpmath import mp, mpf, asinh, sinh, ceil

mp.dps = 30

K = mpf(100)
d = K / 3
s_left = mpf(80)
s_right = mpf(120)
s_max = mpf(500)

xi_min = asinh(-s_left / d)
xi_int = (s_right - s_left) / d
xi_max = xi_int + asinh((s_max - s_right) / d)


def phi(xi):
    if xi <= 0:
        return s_left + d * sinh(xi)
    if xi <= xi_int:
        return s_left + d * xi
    return s_right + d * sinh(xi - xi_int)


def mesh(nu):
    dxi = (xi_int - 2 * xi_min) / nu
    m = int(ceil((xi_max - xi_min) / dxi - mpf("1e-25")))
    return dxi, m, [phi(xi_min + l * dxi) for l in range(m + 1)]


print("xi_min =", mp.nstr(xi_min, 20))
print("xi_int =", mp.nstr(xi_int, 20))
print("xi_max =", mp.nstr(xi_max, 20))

dxi, m, points = mesh(3)
print("nu=3: dxi =", mp.nstr(dxi, 20), " m =", m)
for l, s in enumerate(points):
    print("  s_%d = %s" % (l, mp.nstr(s, 20)))
