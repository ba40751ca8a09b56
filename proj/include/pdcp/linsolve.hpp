#ifndef PDCP_LINSOLVE_HPP
#define PDCP_LINSOLVE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "pdcp/sparse.hpp"

namespace pdcp {

class SingularMatrixError : public std::runtime_error {
  public:
    SingularMatrixError(int row, double pivot)
        : std::runtime_error("near-zero pivot at row " + std::to_string(row) +
                             " (pivot " + std::to_string(pivot) + ")"),
          row_(row) {}
    int row() const { return row_; }

  private:
    int row_;
};

class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

// ---------------------------------------------------------------------------
// tridiagonal systems (Thomas, no pivoting)

struct TridiagMatrix {
    std::vector<double> lower; // lower[0] unused
    std::vector<double> diag;
    std::vector<double> upper; // upper[n-1] unused

    int n() const { return static_cast<int>(diag.size()); }
    static TridiagMatrix identity_minus(double c, const std::vector<double>& lo,
                                        const std::vector<double>& di,
                                        const std::vector<double>& up);
};

// In-place LU: lower becomes the multipliers, diag the U diagonal.
void tridiag_factor_inplace(TridiagMatrix& t);
void tridiag_solve_inplace(const TridiagMatrix& lu, std::vector<double>& x);

struct TridiagFactors {
    TridiagMatrix lu;
};

TridiagFactors tridiag_factor(TridiagMatrix t);
std::vector<double> tridiag_solve(const TridiagFactors& f, const std::vector<double>& rhs);

// ---------------------------------------------------------------------------
// banded systems (LU, no pivoting, equal lower/upper bandwidth)

struct BandMatrix {
    int n = 0;
    int bw = 0;                  // lower = upper bandwidth
    std::vector<double> data;    // row-major, row i holds columns i-bw..i+bw

    BandMatrix() = default;
    BandMatrix(int n_, int bw_) : n(n_), bw(bw_), data(std::size_t(n_) * (2 * bw_ + 1), 0.0) {}

    double& at(int i, int j) { return data[std::size_t(i) * (2 * bw + 1) + (j - i + bw)]; }
    double at(int i, int j) const {
        return data[std::size_t(i) * (2 * bw + 1) + (j - i + bw)];
    }

    // band = identity - c*A; bandwidth taken from A's sparsity
    static BandMatrix identity_minus_csr(double c, const CsrMatrix& a);
};

int csr_bandwidth(const CsrMatrix& a);

void banded_factor_inplace(BandMatrix& m);
void banded_solve_inplace(const BandMatrix& lu, std::vector<double>& x);

struct BandedFactors {
    BandMatrix lu;
};

BandedFactors banded_factor(BandMatrix m);
BandedFactors banded_factor(const CsrMatrix& a, int bandwidth);
std::vector<double> banded_solve(const BandedFactors& f, const std::vector<double>& rhs);

// ---------------------------------------------------------------------------
// linear complementarity oracle

// Find x with x >= lower, M x >= q, (x - lower)^T (M x - q) = 0.
struct LcpProblem {
    CsrMatrix m;
    std::vector<double> q;
    std::vector<double> lower;

    void validate() const;
};

// Worst normalized violation of the three LCP conditions at x.
double lcp_residual(const LcpProblem& problem, const std::vector<double>& x);

// Projected SOR. Converges for the symmetric-positive-definite-like systems
// used here; intended as a test oracle, not a production solver.
std::vector<double> psor_solve(const LcpProblem& problem, double omega = 1.5,
                               double tol = 1e-10, int max_iter = 100000);

} // namespace pdcp

#endif
