#ifndef PDCP_SPATIAL_OPERATOR_HPP
#define PDCP_SPATIAL_OPERATOR_HPP

#include <cstdint>
#include <ostream>
#include <vector>

#include "pdcp/mesh.hpp"
#include "pdcp/payoff.hpp"
#include "pdcp/sparse.hpp"

namespace pdcp {

// Finite-difference coefficients on a nonuniform pair of widths
// (dx_l, dx_{l+1}). alpha is the forward first-derivative pair over nodes
// (l, l+1); beta and delta are the central first/second-derivative triples
// over (l-1, l, l+1). Each set annihilates constants.
struct StencilCoeffs {
    double alpha0, alpha1;
    double beta_m1, beta_0, beta_p1;
    double delta_m1, delta_0, delta_p1;
};

StencilCoeffs stencil_coeffs(double dx_l, double dx_lp1);

enum class OperatorPart { Full, A0, A1, A2 };

// Semidiscrete Black-Scholes operator A on a 1D mesh or a 2D tensor grid,
// with the directional split A = A0 + A1 + A2 (2D). A0 carries the mixed
// derivative term; A1 and A2 carry all s1-/s2-direction terms plus -r/2
// each. Global index is l = i + (m1+1)*j with the s1 index i fastest.
//
// Convection uses the central triple at nodes where
// r*s*beta_m1 + sigma^2 s^2 delta_m1 / 2 >= 0 and the forward pair
// elsewhere. At s = 0 every derivative term in that direction vanishes; at
// the far end the Neumann condition removes the convection term and the
// diffusion stencil folds in a linearly extrapolated virtual point with
// spacing equal to the last mesh width.
struct SpatialOperator {
    bool two_d = false;
    Mesh1D mesh1;
    Mesh1D mesh2; // 2D only
    double r = 0.0;

    CsrMatrix a_full;
    CsrMatrix a0, a1, a2; // 2D only

    std::vector<double> payoff_vec; // U0 on the grid

    // 1 = central, 0 = forward, per node along each axis
    std::vector<std::uint8_t> upwind1;
    std::vector<std::uint8_t> upwind2;

    // tridiagonal line stencils: row i of A1 along direction 1 (identical
    // for every j), and row j of A2 along direction 2
    std::vector<double> d1_lower, d1_diag, d1_upper;
    std::vector<double> d2_lower, d2_diag, d2_upper;

    int size() const { return a_full.rows; }
    int n1() const { return mesh1.size(); }
    int n2() const { return two_d ? mesh2.size() : 1; }
    int index(int i, int j) const { return i + n1() * j; }

    void apply(OperatorPart part, const std::vector<double>& v,
               std::vector<double>& out) const;
    std::vector<double> apply(OperatorPart part, const std::vector<double>& v) const;

    const CsrMatrix& part(OperatorPart p) const;

    void dump_coo(OperatorPart p, std::ostream& os) const { part(p).dump_coo(os); }
};

// The mixed term applies the per-direction first-derivative formulas in
// succession. UpwindSelected reuses the formula the convection rule picked
// at each node; AlwaysCentral uses the central triple regardless.
enum class MixedStencil { UpwindSelected, AlwaysCentral };

SpatialOperator assemble_1d(const Mesh1D& mesh, const FinancialParams& fin,
                            const Payoff& payoff);
SpatialOperator assemble_2d(const Grid2D& grid, const FinancialParams& fin,
                            const Payoff& payoff,
                            MixedStencil mixed = MixedStencil::UpwindSelected);

} // namespace pdcp

#endif
