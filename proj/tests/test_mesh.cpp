#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pdcp/mesh.hpp"

using namespace pdcp;

namespace {

MeshParams standard100() { return MeshParams::standard_for_strike(100.0); }

// high-precision evaluation of the closed forms (tests/oracles/mesh_reference.py)
constexpr double kXiMin100 = -1.6094379124341003746;
constexpr double kXiMax100 = 4.3286786776382764674;
constexpr double kDxiNu3 = 1.4729586082894002497;
const double kPointsNu3[6] = {0.0,
                              75.436553672421076412,
                              124.56344632757892359,
                              200.0,
                              482.74600241372922905,
                              1705.5004272462514959};

} // namespace

TEST_CASE("xi bounds on the standard strike-100 grid") {
    const XiBounds b = xi_bounds(standard100());
    CHECK(b.xi_min == doctest::Approx(std::log(0.2)).epsilon(1e-14));
    CHECK(b.xi_min == doctest::Approx(kXiMin100).epsilon(1e-14));
    CHECK(b.xi_int == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(b.xi_max == doctest::Approx(kXiMax100).epsilon(1e-14));
    CHECK(b.xi_min < 0.0);
    CHECK(b.xi_int < b.xi_max);
}

TEST_CASE("xi bounds degenerate zones") {
    MeshParams p = standard100();
    p.s_left = 0.0;
    p.s_right = 200.0; // keep the strike centered
    CHECK(xi_bounds(p).xi_min == 0.0);

    p = MeshParams{50.0, 100.0, 500.0, 500.0, 300.0};
    const XiBounds b = xi_bounds(p);
    CHECK(b.xi_max == b.xi_int);
}

TEST_CASE("xi bounds rejects bad parameters") {
    MeshParams p = standard100();
    p.d = 0.0;
    CHECK_THROWS_AS(xi_bounds(p), std::invalid_argument);
    p = standard100();
    p.s_left = p.s_right;
    CHECK_THROWS_AS(xi_bounds(p), std::invalid_argument);
    p = standard100();
    p.s_max = 100.0; // below s_right
    CHECK_THROWS_AS(xi_bounds(p), std::invalid_argument);
}

TEST_CASE("map_phi hits the anchor points") {
    const MeshParams p = standard100();
    const XiBounds b = xi_bounds(p);
    CHECK(std::abs(map_phi(b.xi_min, p)) <= 1e-12 * p.s_max);
    CHECK(map_phi(0.0, p) == doctest::Approx(p.s_left));
    CHECK(map_phi(b.xi_int, p) == doctest::Approx(p.s_right));
    CHECK(map_phi(0.5 * b.xi_int, p) == doctest::Approx(p.strike));
}

TEST_CASE("map_phi is strictly increasing") {
    const MeshParams p = standard100();
    const XiBounds b = xi_bounds(p);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(b.xi_min, b.xi_max + 1.0);
    for (int k = 0; k < 2000; ++k) {
        double a = dist(rng), c = dist(rng);
        if (a == c) continue;
        if (a > c) std::swap(a, c);
        CHECK(map_phi(a, p) < map_phi(c, p));
    }
}

TEST_CASE("nu = 1 mesh lands on s_left + s_right") {
    const Mesh1D mesh = build_mesh(standard100(), 1);
    CHECK(std::abs(mesh.points[0]) <= 1e-12 * 500.0);
    CHECK(mesh.points[1] == doctest::Approx(200.0).epsilon(1e-13));
    REQUIRE(mesh.midway_index.has_value());
    CHECK(*mesh.midway_index == 0);
    CHECK(0.5 * (mesh.points[0] + mesh.points[1]) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("nu = 3 mesh matches the scripted evaluation") {
    const Mesh1D mesh = build_mesh(standard100(), 3);
    CHECK(mesh.m() == 5);
    CHECK(mesh.xi_step == doctest::Approx(kDxiNu3).epsilon(1e-15));
    for (int l = 0; l <= 5; ++l)
        CHECK(std::abs(mesh.points[l] - kPointsNu3[l]) <=
              1e-13 * std::max(1.0, std::abs(kPointsNu3[l])));
    REQUIRE(mesh.midway_index.has_value());
    CHECK(*mesh.midway_index == 1);
}

TEST_CASE("builder rejects even or nonpositive nu") {
    CHECK_THROWS_AS(build_mesh(standard100(), 2), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(standard100(), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(standard100(), -3), std::invalid_argument);
}

TEST_CASE("built meshes satisfy the construction invariants") {
    const MeshParams p = standard100();
    for (int nu : {1, 3, 5, 15, 29, 59, 99, 199}) {
        CAPTURE(nu);
        const Mesh1D mesh = build_mesh(p, nu);

        CHECK(std::abs(mesh.points[0]) <= 1e-12 * p.s_max);
        for (int l = 1; l <= mesh.m(); ++l) CHECK(mesh.points[l] > mesh.points[l - 1]);
        CHECK(mesh.points.back() >= p.s_max);

        // uniform interior zone
        double h_int = 0.0;
        for (int l = 1; l <= mesh.m(); ++l) {
            if (mesh.points[l - 1] >= p.s_left - 1e-9 && mesh.points[l] <= p.s_right + 1e-9) {
                if (h_int == 0.0) h_int = mesh.widths[l];
                CHECK(mesh.widths[l] == doctest::Approx(h_int).epsilon(1e-10));
            }
        }
        if (h_int > 0.0)
            for (int l = 1; l <= mesh.m(); ++l)
                CHECK(mesh.widths[l] >= h_int * (1.0 - 1e-12));

        REQUIRE(mesh.midway_index.has_value());
        const int i = *mesh.midway_index;
        CHECK(std::abs(0.5 * (mesh.points[i] + mesh.points[i + 1]) - p.strike) <=
              1e-10 * p.strike);
    }
}

TEST_CASE("smoothness report on a uniform mesh") {
    MeshParams p;
    p.d = 1.0;
    p.s_left = 0.0;
    p.s_right = 2.0;
    p.s_max = 2.0;
    p.strike = 1.0;
    const Mesh1D mesh = build_mesh_uniform_xi(p, 4);
    const SmoothnessReport rep = smoothness_report(mesh);
    CHECK(rep.c0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.c1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(rep.c2) <= 1e-10);
}

TEST_CASE("smoothness bound holds by measurement and c2 is stable in nu") {
    const MeshParams p = standard100();
    double c2_min = 0.0, c2_max = 0.0;
    for (int nu : {49, 99, 199, 399}) {
        const Mesh1D mesh = build_mesh(p, nu);
        const SmoothnessReport rep = smoothness_report(mesh);
        CHECK(rep.c0 > 0.0);
        CHECK(rep.c0 <= rep.c1);
        for (int l = 1; l < mesh.m(); ++l)
            CHECK(std::abs(mesh.widths[l + 1] - mesh.widths[l]) <=
                  rep.c2 * mesh.xi_step * mesh.xi_step * (1.0 + 1e-12));
        if (c2_min == 0.0) c2_min = c2_max = rep.c2;
        c2_min = std::min(c2_min, rep.c2);
        c2_max = std::max(c2_max, rep.c2);
    }
    CHECK(c2_max <= 1.2 * c2_min);
}

TEST_CASE("doubling nu roughly halves the largest width") {
    const MeshParams p = standard100();
    const Mesh1D ma = build_mesh(p, 99), mb = build_mesh(p, 199);
    const double wa = smoothness_report(ma).c1 * ma.xi_step;
    const double wb = smoothness_report(mb).c1 * mb.xi_step;
    CHECK(wa / wb == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("smoothness report rejects degenerate meshes") {
    Mesh1D tiny;
    tiny.points = {0.0, 1.0};
    tiny.widths = {0.0, 1.0};
    tiny.xi_step = 1.0;
    CHECK_THROWS_AS(smoothness_report(tiny), std::invalid_argument);
}

TEST_CASE("nu selection hits the documented resolutions") {
    const MeshParams p = standard100();
    CHECK(nu_for_target_m(p, 20) == 15);
    CHECK(nu_for_target_m(p, 80) == 59);
    CHECK(nu_for_target_m(p, 100) == 73);
    CHECK(nu_for_target_m(p, 200) == 149);
    CHECK(build_mesh(p, 59).m() == 80);
    CHECK(build_mesh(p, 73).m() == 99);
    CHECK(build_mesh(p, 149).m() == 201);
    // the standard grid family scales with the strike
    CHECK(nu_for_target_m(MeshParams::standard_for_strike(40.0), 80) == 59);
}

TEST_CASE("mesh csv dump") {
    const Mesh1D mesh = build_mesh(standard100(), 5);
    std::ostringstream os;
    write_mesh_csv(mesh, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "index,xi,s,width");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == mesh.size());
}
