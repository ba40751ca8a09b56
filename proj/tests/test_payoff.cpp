#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pdcp/payoff.hpp"

using namespace pdcp;

TEST_CASE("kind names round-trip and reject junk") {
    for (PayoffKind k : {PayoffKind::Put1D, PayoffKind::Butterfly1D, PayoffKind::MinPut2D,
                         PayoffKind::AvgPut2D, PayoffKind::MaxButterfly2D})
        CHECK(payoff_kind_from_name(payoff_kind_name(k)) == k);
    CHECK_THROWS_AS(payoff_kind_from_name("straddle"), std::invalid_argument);
}

TEST_CASE("put and butterfly point values") {
    const Payoff put = Payoff::put1d(100.0);
    CHECK(put.eval(80.0) == 20.0);
    CHECK(put.eval(120.0) == 0.0);

    const Payoff fly = Payoff::butterfly1d(80.0, 120.0);
    CHECK(fly.eval(100.0) == 20.0);
    CHECK(fly.eval(80.0) == 0.0);
    CHECK(fly.eval(120.0) == 0.0);

    CHECK(Payoff::min_put2d(40.0).eval(30.0, 50.0) == 10.0);
    CHECK(Payoff::max_butterfly2d(32.0, 48.0).eval(20.0, 40.0) == 8.0);
    CHECK(Payoff::avg_put2d(40.0).eval(30.0, 50.0) == 0.0);
    CHECK(Payoff::avg_put2d(40.0).eval(10.0, 50.0) == 10.0);
}

TEST_CASE("butterfly identity") {
    const Payoff fly = Payoff::butterfly1d(80.0, 120.0);
    CHECK(fly.eval(fly.k1) == 0.0);
    CHECK(fly.eval(fly.k2) == 0.0);
    CHECK(fly.eval(fly.strike()) == 0.5 * (fly.k2 - fly.k1));
}

TEST_CASE("payoffs are nonnegative and piecewise linear") {
    const Payoff put = Payoff::put1d(100.0);
    const Payoff fly = Payoff::butterfly1d(80.0, 120.0);
    std::mt19937 rng(7);

    auto check_piece = [&](const Payoff& p, double lo, double hi) {
        std::uniform_real_distribution<double> dist(lo, hi);
        std::uniform_real_distribution<double> tdist(0.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            const double a = dist(rng), b = dist(rng), t = tdist(rng);
            const double mid = a + t * (b - a);
            const double expect = p.eval(a) + t * (p.eval(b) - p.eval(a));
            CHECK(p.eval(mid) == doctest::Approx(expect).epsilon(1e-12));
            CHECK(p.eval(mid) >= 0.0);
        }
    };
    check_piece(put, 0.0, 100.0);
    check_piece(put, 100.0, 400.0);
    check_piece(fly, 0.0, 80.0);
    check_piece(fly, 80.0, 100.0);
    check_piece(fly, 100.0, 120.0);
    check_piece(fly, 120.0, 400.0);
}

TEST_CASE("payoff validation") {
    CHECK_THROWS_AS(Payoff::put1d(0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::butterfly1d(120.0, 80.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(Payoff::butterfly1d(80.0, 120.0).validate());
}

TEST_CASE("financial params validation") {
    FinancialParams fin{0.02, 0.4, 0.0, 0.0, 0.5};
    CHECK_NOTHROW(fin.validate(false));
    CHECK_THROWS_AS(fin.validate(true), std::invalid_argument); // sigma2 missing
    fin.sigma2 = 0.3;
    fin.rho = 1.5;
    CHECK_THROWS_AS(fin.validate(true), std::invalid_argument);
    fin.rho = 0.5;
    CHECK_NOTHROW(fin.validate(true));
}

TEST_CASE("1D sampling agrees with eval and includes the origin") {
    const MeshParams params = MeshParams::standard_for_strike(100.0);
    const Mesh1D mesh = build_mesh(params, 15);
    const Payoff put = Payoff::put1d(100.0);
    const std::vector<double> u0 = sample_grid(put, mesh);
    REQUIRE(static_cast<int>(u0.size()) == mesh.size());
    CHECK(u0[0] == 100.0); // s = 0 pays the full strike
    for (int l = 0; l < mesh.size(); ++l) {
        CHECK(u0[l] == put.eval(mesh.points[l]));
        CHECK(u0[l] >= 0.0);
    }
}

TEST_CASE("2D sampling enumerates min-put on a 3x3 grid, s1 fastest") {
    Mesh1D axis;
    axis.points = {0.0, 40.0, 80.0};
    axis.widths = {0.0, 40.0, 40.0};
    axis.xi_step = 1.0;
    const Grid2D grid{axis, axis};
    const std::vector<double> u0 = sample_grid(Payoff::min_put2d(40.0), grid);
    // min(s1, s2) vanishes on both axes, so the whole j = 0 row pays K
    const std::vector<double> expect = {40, 40, 40, 40, 0, 0, 40, 0, 0};
    REQUIRE(u0.size() == expect.size());
    for (std::size_t l = 0; l < u0.size(); ++l) CHECK(u0[l] == expect[l]);
    CHECK(grid.index(1, 2) == 7);
}
