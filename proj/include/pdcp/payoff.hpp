#ifndef PDCP_PAYOFF_HPP
#define PDCP_PAYOFF_HPP

#include <string>
#include <vector>

#include "pdcp/mesh.hpp"

namespace pdcp {

enum class PayoffKind {
    Put1D,          // max(K - s, 0)
    Butterfly1D,    // max(s-K1,0) - 2 max(s-K,0) + max(s-K2,0), K = (K1+K2)/2
    MinPut2D,       // put on min(s1, s2)
    AvgPut2D,       // put on (s1 + s2)/2
    MaxButterfly2D, // butterfly on max(s1, s2)
};

bool payoff_kind_is_2d(PayoffKind kind);
std::string payoff_kind_name(PayoffKind kind);
PayoffKind payoff_kind_from_name(const std::string& name);

struct Payoff {
    PayoffKind kind = PayoffKind::Put1D;
    double k1 = 0.0; // lower strike (butterflies) or K
    double k2 = 0.0; // upper strike; unused for puts

    static Payoff put1d(double strike);
    static Payoff butterfly1d(double k1, double k2);
    static Payoff min_put2d(double strike);
    static Payoff avg_put2d(double strike);
    static Payoff max_butterfly2d(double k1, double k2);

    bool is_2d() const { return payoff_kind_is_2d(kind); }
    // central strike: K for puts, (K1+K2)/2 for butterflies
    double strike() const;
    void validate() const;

    double eval(double s1, double s2 = 0.0) const;
};

struct FinancialParams {
    double r = 0.0;          // risk-free rate, 1/year
    double sigma1 = 0.0;     // volatility of asset 1
    double sigma2 = 0.0;     // volatility of asset 2 (ignored in 1D)
    double rho = 0.0;        // correlation, in [-1, 1]
    double t_maturity = 0.0; // T, years

    void validate(bool two_d) const;
};

// Payoff sampled on the grid; 2D uses index l = i + (m1+1)*j (s1 fastest).
std::vector<double> sample_grid(const Payoff& payoff, const Mesh1D& mesh);
std::vector<double> sample_grid(const Payoff& payoff, const Grid2D& grid);

} // namespace pdcp

#endif
