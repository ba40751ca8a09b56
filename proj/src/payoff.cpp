#include "pdcp/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdcp {

bool payoff_kind_is_2d(PayoffKind kind) {
    return kind == PayoffKind::MinPut2D || kind == PayoffKind::AvgPut2D ||
           kind == PayoffKind::MaxButterfly2D;
}

std::string payoff_kind_name(PayoffKind kind) {
    switch (kind) {
        case PayoffKind::Put1D: return "put1d";
        case PayoffKind::Butterfly1D: return "butterfly1d";
        case PayoffKind::MinPut2D: return "minput2d";
        case PayoffKind::AvgPut2D: return "avgput2d";
        case PayoffKind::MaxButterfly2D: return "maxbutterfly2d";
    }
    throw std::logic_error("payoff_kind_name: bad kind");
}

PayoffKind payoff_kind_from_name(const std::string& name) {
    if (name == "put1d") return PayoffKind::Put1D;
    if (name == "butterfly1d") return PayoffKind::Butterfly1D;
    if (name == "minput2d") return PayoffKind::MinPut2D;
    if (name == "avgput2d") return PayoffKind::AvgPut2D;
    if (name == "maxbutterfly2d") return PayoffKind::MaxButterfly2D;
    throw std::invalid_argument("unknown payoff kind '" + name + "'");
}

Payoff Payoff::put1d(double strike) { return Payoff{PayoffKind::Put1D, strike, 0.0}; }
Payoff Payoff::butterfly1d(double k1, double k2) {
    return Payoff{PayoffKind::Butterfly1D, k1, k2};
}
Payoff Payoff::min_put2d(double strike) { return Payoff{PayoffKind::MinPut2D, strike, 0.0}; }
Payoff Payoff::avg_put2d(double strike) { return Payoff{PayoffKind::AvgPut2D, strike, 0.0}; }
Payoff Payoff::max_butterfly2d(double k1, double k2) {
    return Payoff{PayoffKind::MaxButterfly2D, k1, k2};
}

double Payoff::strike() const {
    switch (kind) {
        case PayoffKind::Put1D:
        case PayoffKind::MinPut2D:
        case PayoffKind::AvgPut2D: return k1;
        case PayoffKind::Butterfly1D:
        case PayoffKind::MaxButterfly2D: return 0.5 * (k1 + k2);
    }
    throw std::logic_error("Payoff::strike: bad kind");
}

void Payoff::validate() const {
    const bool butterfly =
        kind == PayoffKind::Butterfly1D || kind == PayoffKind::MaxButterfly2D;
    if (butterfly) {
        if (!(0.0 < k1 && k1 < k2))
            throw std::invalid_argument("payoff: butterfly needs 0 < K1 < K2");
    } else {
        if (!(k1 > 0.0)) throw std::invalid_argument("payoff: strike must be positive");
    }
}

namespace {

double put_value(double strike, double s) { return std::max(strike - s, 0.0); }

double butterfly_value(double k1, double k2, double s) {
    const double k = 0.5 * (k1 + k2);
    return std::max(s - k1, 0.0) - 2.0 * std::max(s - k, 0.0) + std::max(s - k2, 0.0);
}

} // namespace

double Payoff::eval(double s1, double s2) const {
    switch (kind) {
        case PayoffKind::Put1D: return put_value(k1, s1);
        case PayoffKind::Butterfly1D: return butterfly_value(k1, k2, s1);
        case PayoffKind::MinPut2D: return put_value(k1, std::min(s1, s2));
        case PayoffKind::AvgPut2D: return put_value(k1, 0.5 * (s1 + s2));
        case PayoffKind::MaxButterfly2D: return butterfly_value(k1, k2, std::max(s1, s2));
    }
    throw std::logic_error("Payoff::eval: bad kind");
}

void FinancialParams::validate(bool two_d) const {
    if (!(sigma1 > 0.0)) throw std::invalid_argument("params: sigma1 must be positive");
    if (two_d && !(sigma2 > 0.0))
        throw std::invalid_argument("params: sigma2 must be positive");
    if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("params: |rho| <= 1 required");
    if (!(t_maturity > 0.0)) throw std::invalid_argument("params: T must be positive");
}

std::vector<double> sample_grid(const Payoff& payoff, const Mesh1D& mesh) {
    std::vector<double> u0(mesh.size());
    for (int l = 0; l < mesh.size(); ++l) u0[l] = payoff.eval(mesh.points[l]);
    return u0;
}

std::vector<double> sample_grid(const Payoff& payoff, const Grid2D& grid) {
    std::vector<double> u0(grid.size());
    for (int j = 0; j < grid.axis2.size(); ++j)
        for (int i = 0; i < grid.axis1.size(); ++i)
            u0[grid.index(i, j)] = payoff.eval(grid.axis1.points[i], grid.axis2.points[j]);
    return u0;
}

} // namespace pdcp
