#include "pdcp/linsolve.hpp"

#include <algorithm>
#include <cmath>

namespace pdcp {

namespace {
constexpr double kPivotTol = 1e-14;
}

TridiagMatrix TridiagMatrix::identity_minus(double c, const std::vector<double>& lo,
                                            const std::vector<double>& di,
                                            const std::vector<double>& up) {
    const int n = static_cast<int>(di.size());
    TridiagMatrix t;
    t.lower.resize(n);
    t.diag.resize(n);
    t.upper.resize(n);
    for (int i = 0; i < n; ++i) {
        t.lower[i] = -c * lo[i];
        t.diag[i] = 1.0 - c * di[i];
        t.upper[i] = -c * up[i];
    }
    t.lower[0] = 0.0;
    t.upper[n - 1] = 0.0;
    return t;
}

void tridiag_factor_inplace(TridiagMatrix& t) {
    const int n = t.n();
    if (n == 0) throw std::invalid_argument("tridiag_factor: empty matrix");
    std::vector<double> scale(n);
    for (int i = 0; i < n; ++i)
        scale[i] = std::abs(t.lower[i]) + std::abs(t.diag[i]) + std::abs(t.upper[i]);

    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            const double mult = t.lower[i] / t.diag[i - 1];
            t.lower[i] = mult;
            t.diag[i] -= mult * t.upper[i - 1];
        }
        if (std::abs(t.diag[i]) < kPivotTol * scale[i])
            throw SingularMatrixError(i, t.diag[i]);
    }
}

void tridiag_solve_inplace(const TridiagMatrix& lu, std::vector<double>& x) {
    const int n = lu.n();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("tridiag_solve: length mismatch");
    for (int i = 1; i < n; ++i) x[i] -= lu.lower[i] * x[i - 1];
    x[n - 1] /= lu.diag[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - lu.upper[i] * x[i + 1]) / lu.diag[i];
}

TridiagFactors tridiag_factor(TridiagMatrix t) {
    tridiag_factor_inplace(t);
    return TridiagFactors{std::move(t)};
}

std::vector<double> tridiag_solve(const TridiagFactors& f, const std::vector<double>& rhs) {
    std::vector<double> x = rhs;
    tridiag_solve_inplace(f.lu, x);
    return x;
}

// ---------------------------------------------------------------------------

int csr_bandwidth(const CsrMatrix& a) {
    int bw = 0;
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            bw = std::max(bw, std::abs(a.col_idx[k] - i));
    return bw;
}

BandMatrix BandMatrix::identity_minus_csr(double c, const CsrMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("band: matrix not square");
    BandMatrix b(a.rows, csr_bandwidth(a));
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            b.at(i, a.col_idx[k]) = -c * a.values[k];
    for (int i = 0; i < a.rows; ++i) b.at(i, i) += 1.0;
    return b;
}

void banded_factor_inplace(BandMatrix& m) {
    const int n = m.n;
    const int bw = m.bw;
    const int stride = 2 * bw + 1;
    if (n == 0) throw std::invalid_argument("banded_factor: empty matrix");

    std::vector<double> scale(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        const double* row = &m.data[std::size_t(i) * stride];
        for (int k = 0; k < stride; ++k) s += std::abs(row[k]);
        scale[i] = s;
    }

    double* d = m.data.data();
    for (int i = 0; i < n; ++i) {
        const double pivot = d[std::size_t(i) * stride + bw];
        if (std::abs(pivot) < kPivotTol * scale[i]) throw SingularMatrixError(i, pivot);
        const int rmax = std::min(i + bw, n - 1);
        const double* prow = d + std::size_t(i) * stride;
        for (int r = i + 1; r <= rmax; ++r) {
            double* rrow = d + std::size_t(r) * stride;
            const int off = i - r + bw; // column i in row r
            const double mult = rrow[off] / pivot;
            rrow[off] = mult;
            if (mult != 0.0) {
                const int jmax = std::min(i + bw, n - 1);
                // columns i+1..jmax; both rows contiguous over j
                const double* src = prow + (i + 1 - i + bw);
                double* dst = rrow + (i + 1 - r + bw);
                for (int j = 0; j <= jmax - i - 1; ++j) dst[j] -= mult * src[j];
            }
        }
    }
}

void banded_solve_inplace(const BandMatrix& lu, std::vector<double>& x) {
    const int n = lu.n;
    const int bw = lu.bw;
    const int stride = 2 * bw + 1;
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("banded_solve: length mismatch");
    const double* d = lu.data.data();
    for (int i = 0; i < n; ++i) {
        const int j0 = std::max(0, i - bw);
        const double* row = d + std::size_t(i) * stride;
        double acc = x[i];
        for (int j = j0; j < i; ++j) acc -= row[j - i + bw] * x[j];
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        const int j1 = std::min(n - 1, i + bw);
        const double* row = d + std::size_t(i) * stride;
        double acc = x[i];
        for (int j = i + 1; j <= j1; ++j) acc -= row[j - i + bw] * x[j];
        x[i] = acc / row[bw];
    }
}

BandedFactors banded_factor(BandMatrix m) {
    banded_factor_inplace(m);
    return BandedFactors{std::move(m)};
}

BandedFactors banded_factor(const CsrMatrix& a, int bandwidth) {
    if (a.rows != a.cols) throw std::invalid_argument("banded_factor: matrix not square");
    if (bandwidth < csr_bandwidth(a))
        throw std::invalid_argument("banded_factor: entries outside bandwidth");
    BandMatrix b(a.rows, bandwidth);
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            b.at(i, a.col_idx[k]) = a.values[k];
    return banded_factor(std::move(b));
}

std::vector<double> banded_solve(const BandedFactors& f, const std::vector<double>& rhs) {
    std::vector<double> x = rhs;
    banded_solve_inplace(f.lu, x);
    return x;
}

// ---------------------------------------------------------------------------

void LcpProblem::validate() const {
    if (m.rows != m.cols) throw std::invalid_argument("lcp: matrix not square");
    if (static_cast<int>(q.size()) != m.rows || static_cast<int>(lower.size()) != m.rows)
        throw std::invalid_argument("lcp: dimension mismatch");
}

double lcp_residual(const LcpProblem& problem, const std::vector<double>& x) {
    const int n = problem.m.rows;
    std::vector<double> mx = problem.m.apply(x);
    double qn = 1.0;
    for (int i = 0; i < n; ++i) qn = std::max(qn, std::abs(problem.q[i]));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double slack = x[i] - problem.lower[i];
        const double resid = mx[i] - problem.q[i];
        worst = std::max(worst, -slack / std::max(1.0, std::abs(problem.lower[i])));
        worst = std::max(worst, -resid / qn);
        worst = std::max(worst, std::abs(slack * resid) / (qn * std::max(1.0, std::abs(x[i]))));
    }
    return worst;
}

std::vector<double> psor_solve(const LcpProblem& problem, double omega, double tol,
                               int max_iter) {
    problem.validate();
    if (!(omega >= 1.0 && omega < 2.0))
        throw std::invalid_argument("psor: need 1 <= omega < 2");
    const int n = problem.m.rows;
    const CsrMatrix& m = problem.m;

    std::vector<double> diag(n, 0.0);
    for (int i = 0; i < n; ++i) diag[i] = m.entry(i, i);
    for (int i = 0; i < n; ++i)
        if (!(diag[i] > 0.0)) throw std::invalid_argument("psor: diagonal must be positive");

    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::max(problem.lower[i], 0.0);

    double change = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        change = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = problem.q[i];
            for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
                const int j = m.col_idx[k];
                if (j != i) acc -= m.values[k] * x[j];
            }
            const double gs = acc / diag[i];
            const double xn = std::max(problem.lower[i], (1.0 - omega) * x[i] + omega * gs);
            change = std::max(change, std::abs(xn - x[i]));
            x[i] = xn;
        }
        if (change < tol) {
            const double resid = lcp_residual(problem, x);
            if (resid > 10.0 * tol)
                throw NonConvergenceError("psor: stalled with residual above tolerance",
                                          resid);
            return x;
        }
    }
    throw NonConvergenceError("psor: max iterations exceeded", change);
}

} // namespace pdcp
