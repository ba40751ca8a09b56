#include "pdcp/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pdcp {

void MeshParams::validate() const {
    if (!(d > 0.0)) throw std::invalid_argument("mesh: d must be positive");
    if (!(0.0 <= s_left && s_left < s_right && s_right <= s_max))
        throw std::invalid_argument("mesh: need 0 <= s_left < s_right <= s_max");
}

MeshParams MeshParams::standard_for_strike(double strike) {
    if (!(strike > 0.0)) throw std::invalid_argument("mesh: strike must be positive");
    MeshParams p;
    p.d = strike / 3.0;
    p.s_left = 0.8 * strike;
    p.s_right = 1.2 * strike;
    p.s_max = 5.0 * strike;
    p.strike = strike;
    return p;
}

XiBounds xi_bounds(const MeshParams& params) {
    params.validate();
    XiBounds b;
    b.xi_min = std::asinh(-params.s_left / params.d);
    b.xi_int = (params.s_right - params.s_left) / params.d;
    b.xi_max = b.xi_int + std::asinh((params.s_max - params.s_right) / params.d);
    return b;
}

double map_phi(double xi, const MeshParams& params) {
    const double xi_int = (params.s_right - params.s_left) / params.d;
    if (xi <= 0.0) return params.s_left + params.d * std::sinh(xi);
    if (xi <= xi_int) return params.s_left + params.d * xi;
    return params.s_right + params.d * std::sinh(xi - xi_int);
}

namespace {

// smallest integer m with m*dxi >= span
int steps_to_cover(double span, double dxi) {
    int m = static_cast<int>(std::ceil(span / dxi));
    while (m > 1 && (m - 1) * dxi >= span) --m;
    while (m * dxi < span) ++m;
    return m;
}

Mesh1D mesh_from_lattice(const MeshParams& params, double xi_min, double dxi, int m) {
    Mesh1D mesh;
    mesh.xi_min = xi_min;
    mesh.xi_step = dxi;
    mesh.points.resize(m + 1);
    mesh.widths.assign(m + 1, 0.0);
    for (int l = 0; l <= m; ++l)
        mesh.points[l] = map_phi(xi_min + l * dxi, params);
    for (int l = 1; l <= m; ++l) {
        mesh.widths[l] = mesh.points[l] - mesh.points[l - 1];
        if (!(mesh.widths[l] > 0.0))
            throw std::runtime_error("mesh: points not strictly increasing");
    }
    return mesh;
}

} // namespace

Mesh1D build_mesh(const MeshParams& params, int nu) {
    params.validate();
    if (nu < 1 || nu % 2 == 0)
        throw std::invalid_argument("mesh: nu must be odd and >= 1");

    const XiBounds b = xi_bounds(params);
    const double dxi = (b.xi_int - 2.0 * b.xi_min) / nu;
    const int m = steps_to_cover(b.xi_max - b.xi_min, dxi);

    Mesh1D mesh = mesh_from_lattice(params, b.xi_min, dxi, m);
    // K sits midway between points (nu-1)/2 and (nu+1)/2 by the symmetry of
    // phi about (xi_int/2, K) when K is centered in [s_left, s_right].
    mesh.midway_index = (nu - 1) / 2;
    return mesh;
}

Mesh1D build_mesh_uniform_xi(const MeshParams& params, int m) {
    params.validate();
    if (m < 1) throw std::invalid_argument("mesh: need m >= 1");
    const XiBounds b = xi_bounds(params);
    const double dxi = (b.xi_max - b.xi_min) / m;
    return mesh_from_lattice(params, b.xi_min, dxi, m);
}

SmoothnessReport smoothness_report(const Mesh1D& mesh) {
    if (mesh.size() < 3) throw std::invalid_argument("smoothness_report: mesh too small");
    const double dxi = mesh.xi_step;
    double hmin = mesh.widths[1], hmax = mesh.widths[1], dmax = 0.0;
    for (int l = 1; l <= mesh.m(); ++l) {
        hmin = std::min(hmin, mesh.widths[l]);
        hmax = std::max(hmax, mesh.widths[l]);
        if (l + 1 <= mesh.m())
            dmax = std::max(dmax, std::abs(mesh.widths[l + 1] - mesh.widths[l]));
    }
    return SmoothnessReport{hmin / dxi, hmax / dxi, dmax / (dxi * dxi)};
}

int nu_for_target_m(const MeshParams& params, int target_m) {
    params.validate();
    const XiBounds b = xi_bounds(params);
    const double span = b.xi_max - b.xi_min;
    const double unit = b.xi_int - 2.0 * b.xi_min;

    int best_nu = 1;
    int best_diff = -1;
    for (int nu = 1; nu <= 4 * target_m + 8; nu += 2) {
        const int m = steps_to_cover(span, unit / nu);
        const int diff = std::abs(m - target_m);
        if (best_diff < 0 || diff < best_diff) {
            best_diff = diff;
            best_nu = nu;
        }
    }
    return best_nu;
}

void write_mesh_csv(const Mesh1D& mesh, std::ostream& os) {
    os << "index,xi,s,width\n";
    char buf[128];
    for (int l = 0; l <= mesh.m(); ++l) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", l,
                      mesh.xi_min + l * mesh.xi_step, mesh.points[l], mesh.widths[l]);
        os << buf;
    }
}

} // namespace pdcp
