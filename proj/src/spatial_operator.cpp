#include "pdcp/spatial_operator.hpp"

#include <stdexcept>

namespace pdcp {

StencilCoeffs stencil_coeffs(double dx_l, double dx_lp1) {
    if (!(dx_l > 0.0) || !(dx_lp1 > 0.0))
        throw std::invalid_argument("stencil_coeffs: widths must be positive");
    StencilCoeffs c;
    c.alpha0 = -1.0 / dx_lp1;
    c.alpha1 = 1.0 / dx_lp1;
    const double sum = dx_l + dx_lp1;
    c.beta_m1 = -dx_lp1 / (dx_l * sum);
    c.beta_0 = (dx_lp1 - dx_l) / (dx_l * dx_lp1);
    c.beta_p1 = dx_l / (dx_lp1 * sum);
    c.delta_m1 = 2.0 / (dx_l * sum);
    c.delta_0 = -2.0 / (dx_l * dx_lp1);
    c.delta_p1 = 2.0 / (dx_lp1 * sum);
    return c;
}

namespace {

// Row of the 1D direction operator: diffusion + upwinded convection -
// reaction*I, as a tridiagonal triple per node. first_deriv holds the
// per-node first-derivative stencil over (l-1, l, l+1) that the mixed term
// reuses (upwind-selected inside, virtual-point fold at the far end).
struct DirectionStencil {
    std::vector<double> lower, diag, upper;
    std::vector<std::uint8_t> central;
    std::vector<double> fd_m1, fd_0, fd_p1; // first-derivative stencil, upwind-selected
    std::vector<double> cd_m1, cd_0, cd_p1; // always-central variant
};

DirectionStencil direction_stencil(const Mesh1D& mesh, double r, double sigma,
                                   double reaction) {
    const int m = mesh.m();
    if (m < 2) throw std::invalid_argument("operator: mesh too small (< 3 points)");

    DirectionStencil d;
    d.lower.assign(m + 1, 0.0);
    d.diag.assign(m + 1, 0.0);
    d.upper.assign(m + 1, 0.0);
    d.central.assign(m + 1, 1);
    d.fd_m1.assign(m + 1, 0.0);
    d.fd_0.assign(m + 1, 0.0);
    d.fd_p1.assign(m + 1, 0.0);
    d.cd_m1.assign(m + 1, 0.0);
    d.cd_0.assign(m + 1, 0.0);
    d.cd_p1.assign(m + 1, 0.0);

    // s = 0: every derivative term in this direction vanishes
    d.diag[0] = -reaction;

    for (int l = 1; l < m; ++l) {
        const double s = mesh.points[l];
        const StencilCoeffs c = stencil_coeffs(mesh.widths[l], mesh.widths[l + 1]);
        const double diff = 0.5 * sigma * sigma * s * s;
        const bool central = r * s * c.beta_m1 + diff * c.delta_m1 >= 0.0;
        d.central[l] = central ? 1 : 0;

        d.lower[l] = diff * c.delta_m1;
        d.diag[l] = diff * c.delta_0 - reaction;
        d.upper[l] = diff * c.delta_p1;
        if (central) {
            d.lower[l] += r * s * c.beta_m1;
            d.diag[l] += r * s * c.beta_0;
            d.upper[l] += r * s * c.beta_p1;
            d.fd_m1[l] = c.beta_m1;
            d.fd_0[l] = c.beta_0;
            d.fd_p1[l] = c.beta_p1;
        } else {
            d.diag[l] += r * s * c.alpha0;
            d.upper[l] += r * s * c.alpha1;
            d.fd_0[l] = c.alpha0;
            d.fd_p1[l] = c.alpha1;
        }
        d.cd_m1[l] = c.beta_m1;
        d.cd_0[l] = c.beta_0;
        d.cd_p1[l] = c.beta_p1;
    }

    // far end: Neumann drops the convection term; the diffusion stencil
    // folds in the virtual point u_{m+1} = 2 u_m - u_{m-1} at spacing h_m,
    // which cancels it entirely
    {
        const double s = mesh.points[m];
        const double h = mesh.widths[m];
        const StencilCoeffs c = stencil_coeffs(h, h);
        const double diff = 0.5 * sigma * sigma * s * s;
        d.lower[m] = diff * (c.delta_m1 - c.delta_p1);
        d.diag[m] = diff * (c.delta_0 + 2.0 * c.delta_p1) - reaction;
        // first derivative with the same fold, for the mixed term
        d.fd_m1[m] = c.beta_m1 - c.beta_p1;
        d.fd_0[m] = c.beta_0 + 2.0 * c.beta_p1;
        d.cd_m1[m] = d.fd_m1[m];
        d.cd_0[m] = d.fd_0[m];
    }

    return d;
}

} // namespace

SpatialOperator assemble_1d(const Mesh1D& mesh, const FinancialParams& fin,
                            const Payoff& payoff) {
    fin.validate(false);
    payoff.validate();
    if (payoff.is_2d()) throw std::invalid_argument("assemble_1d: payoff is 2D");

    SpatialOperator op;
    op.two_d = false;
    op.mesh1 = mesh;
    op.r = fin.r;
    op.payoff_vec = sample_grid(payoff, mesh);

    DirectionStencil d = direction_stencil(mesh, fin.r, fin.sigma1, fin.r);
    const int n = mesh.size();
    CooBuilder bld(n, n);
    for (int l = 0; l < n; ++l) {
        if (l > 0 && d.lower[l] != 0.0) bld.add(l, l - 1, d.lower[l]);
        bld.add(l, l, d.diag[l]);
        if (l + 1 < n && d.upper[l] != 0.0) bld.add(l, l + 1, d.upper[l]);
    }
    op.a_full = bld.build();
    op.upwind1 = d.central;
    op.d1_lower = std::move(d.lower);
    op.d1_diag = std::move(d.diag);
    op.d1_upper = std::move(d.upper);
    return op;
}

SpatialOperator assemble_2d(const Grid2D& grid, const FinancialParams& fin,
                            const Payoff& payoff, MixedStencil mixed) {
    fin.validate(true);
    payoff.validate();
    if (!payoff.is_2d()) throw std::invalid_argument("assemble_2d: payoff is 1D");

    SpatialOperator op;
    op.two_d = true;
    op.mesh1 = grid.axis1;
    op.mesh2 = grid.axis2;
    op.r = fin.r;
    op.payoff_vec = sample_grid(payoff, grid);

    const int n1 = grid.axis1.size();
    const int n2 = grid.axis2.size();
    const int n = n1 * n2;

    DirectionStencil d1 = direction_stencil(grid.axis1, fin.r, fin.sigma1, 0.5 * fin.r);
    DirectionStencil d2 = direction_stencil(grid.axis2, fin.r, fin.sigma2, 0.5 * fin.r);

    // A1: direction-1 stencil replicated over every j-line
    {
        CooBuilder bld(n, n);
        for (int j = 0; j < n2; ++j) {
            for (int i = 0; i < n1; ++i) {
                const int row = grid.index(i, j);
                if (i > 0 && d1.lower[i] != 0.0) bld.add(row, row - 1, d1.lower[i]);
                bld.add(row, row, d1.diag[i]);
                if (i + 1 < n1 && d1.upper[i] != 0.0) bld.add(row, row + 1, d1.upper[i]);
            }
        }
        op.a1 = bld.build();
    }
    // A2: direction-2 stencil, stride n1
    {
        CooBuilder bld(n, n);
        for (int j = 0; j < n2; ++j) {
            for (int i = 0; i < n1; ++i) {
                const int row = grid.index(i, j);
                if (j > 0 && d2.lower[j] != 0.0) bld.add(row, row - n1, d2.lower[j]);
                bld.add(row, row, d2.diag[j]);
                if (j + 1 < n2 && d2.upper[j] != 0.0) bld.add(row, row + n1, d2.upper[j]);
            }
        }
        op.a2 = bld.build();
    }
    // A0: mixed derivative, successive application of the per-direction
    // first-derivative stencils; the s1*s2 prefactor removes i = 0 / j = 0
    {
        CooBuilder bld(n, n);
        if (fin.rho != 0.0) {
            const bool upw = mixed == MixedStencil::UpwindSelected;
            const double cf = fin.rho * fin.sigma1 * fin.sigma2;
            for (int j = 1; j < n2; ++j) {
                for (int i = 1; i < n1; ++i) {
                    const double pref =
                        cf * grid.axis1.points[i] * grid.axis2.points[j];
                    const int row = grid.index(i, j);
                    const double g1[3] = {upw ? d1.fd_m1[i] : d1.cd_m1[i],
                                          upw ? d1.fd_0[i] : d1.cd_0[i],
                                          upw ? d1.fd_p1[i] : d1.cd_p1[i]};
                    const double g2[3] = {upw ? d2.fd_m1[j] : d2.cd_m1[j],
                                          upw ? d2.fd_0[j] : d2.cd_0[j],
                                          upw ? d2.fd_p1[j] : d2.cd_p1[j]};
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (g2[dj + 1] == 0.0) continue;
                        for (int di = -1; di <= 1; ++di) {
                            if (g1[di + 1] == 0.0) continue;
                            bld.add(row, grid.index(i + di, j + dj),
                                    pref * g1[di + 1] * g2[dj + 1]);
                        }
                    }
                }
            }
        }
        op.a0 = bld.build();
    }

    op.a_full = csr_add(csr_add(op.a0, op.a1), op.a2);

    op.upwind1 = d1.central;
    op.upwind2 = d2.central;
    op.d1_lower = std::move(d1.lower);
    op.d1_diag = std::move(d1.diag);
    op.d1_upper = std::move(d1.upper);
    op.d2_lower = std::move(d2.lower);
    op.d2_diag = std::move(d2.diag);
    op.d2_upper = std::move(d2.upper);
    return op;
}

const CsrMatrix& SpatialOperator::part(OperatorPart p) const {
    if (!two_d && p != OperatorPart::Full)
        throw std::invalid_argument("operator: 1D operator has no split parts");
    switch (p) {
        case OperatorPart::Full: return a_full;
        case OperatorPart::A0: return a0;
        case OperatorPart::A1: return a1;
        case OperatorPart::A2: return a2;
    }
    throw std::logic_error("operator: bad part");
}

void SpatialOperator::apply(OperatorPart p, const std::vector<double>& v,
                            std::vector<double>& out) const {
    part(p).apply(v, out);
}

std::vector<double> SpatialOperator::apply(OperatorPart p,
                                           const std::vector<double>& v) const {
    std::vector<double> out;
    apply(p, v, out);
    return out;
}

} // namespace pdcp
