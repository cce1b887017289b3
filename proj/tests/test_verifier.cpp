#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "innerdist/domain.hpp"
#include "innerdist/geodesic.hpp"
#include "innerdist/util.hpp"
#include "innerdist/verifier.hpp"

using namespace innerdist;

namespace {

PolygonalDomain square_with_slit() {
    PolygonalDomain d;
    d.outer = SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    d.slits.push_back(Polyline({{0.5, 0.0}, {0.5, 0.75}}));
    return d;
}

SimplePolygon unit_square() {
    return SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace

TEST_CASE("verifier: bounded report on the slit square") {
    PolygonalDomain d = square_with_slit();
    BoundReport r = verify_main_theorem(d, {0.25, 0.5}, {0.75, 0.5});
    CHECK(r.bounded);
    CHECK(r.offset == 0.0);
    CHECK(r.h1_e == Catch::Approx(4.75).margin(1e-12));
    CHECK(r.bound == Catch::Approx(4.75).margin(1e-12));
    CHECK(r.inner == Catch::Approx(std::sqrt(2.0) / 2.0).margin(1e-9));
    CHECK(r.euclidean == 0.5);
    CHECK(r.margin == Catch::Approx(4.75 - std::sqrt(2.0) / 2.0).margin(1e-9));
    CHECK(r.satisfied);
    CHECK(r.classic_bound == Catch::Approx(0.5 + 0.5 * kPi * 4.75).margin(1e-12));
    CHECK(r.classic_satisfied);
}

TEST_CASE("verifier: unbounded report adds the straight distance") {
    PolygonalDomain d;
    d.slits.push_back(Polyline({{0, -1}, {0, 1}}));
    BoundReport r = verify_main_theorem(d, {-1, 0}, {1, 0});
    CHECK_FALSE(r.bounded);
    CHECK(r.offset == 2.0);
    CHECK(r.h1_e == Catch::Approx(2.0).margin(1e-12));
    CHECK(r.bound == Catch::Approx(4.0).margin(1e-12));
    CHECK(r.inner == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-9));
    CHECK(r.satisfied);
    CHECK(r.classic_satisfied);
}

TEST_CASE("verifier: bounds hold for random pairs in a comb") {
    PolygonalDomain d = comb_domain(4);
    VisibilityEngine engine(d);
    BoundaryDecomposition dec = decompose_boundary(d);
    std::mt19937_64 rng(411);
    auto sample = [&] {
        for (;;) {
            Point p{uniform_in(rng, 0.01, 0.99), uniform_in(rng, 0.01, 0.99)};
            if (contains(d, p) == Containment::inside) return p;
        }
    };
    for (int it = 0; it < 12; ++it) {
        Point x = sample(), y = sample();
        BoundReport r = verify_main_theorem(engine, d, dec, x, y);
        INFO("pair " << it);
        CHECK(r.satisfied);
        CHECK(r.classic_satisfied);
        CHECK(r.inner >= r.euclidean - 1e-12);
        CHECK(r.margin >= -1e-9);
    }
}

TEST_CASE("verifier: sharpness sweep ratios climb toward one") {
    SharpnessSweep sweep = sharpness_sweep();
    REQUIRE(sweep.entries.size() == 5);
    CHECK(sweep.nondecreasing);
    CHECK(sweep.below_one);
    CHECK(sweep.entries.front().ratio ==
          Catch::Approx((49.0 / 60.0) / 5.0).margin(1e-9));
    CHECK(sweep.entries.back().ratio > 0.6);
    for (const SharpnessEntry& e : sweep.entries) {
        CHECK(e.ratio == Catch::Approx(e.inner / e.boundary_length).margin(1e-15));
        CHECK(e.inner < e.boundary_length);
    }
}

TEST_CASE("verifier: square detours") {
    SimplePolygon sq = unit_square();
    SECTION("axis-aligned chord") {
        DetourCertificate c = boundary_detour(sq, {0.3, 0.5}, {0.7, 0.5});
        CHECK(c.forward_from_x == Point{0.3, 1.0});
        CHECK(c.forward_from_y == Point{0.7, 1.0});
        CHECK(c.backward_from_x == Point{0.3, 0.0});
        CHECK(c.backward_from_y == Point{0.7, 0.0});
        CHECK(c.forward_arc == Catch::Approx(0.4).margin(1e-12));
        CHECK(c.backward_arc == Catch::Approx(0.4).margin(1e-12));
        CHECK(c.perimeter == Catch::Approx(4.0).margin(1e-12));
        CHECK(c.satisfied);
    }
    SECTION("diagonal chord") {
        DetourCertificate c = boundary_detour(sq, {0.25, 0.25}, {0.75, 0.75});
        CHECK(c.forward_arc == Catch::Approx(1.0).margin(1e-9));
        CHECK(c.backward_arc == Catch::Approx(1.0).margin(1e-9));
        CHECK(c.satisfied);
    }
    SECTION("corner hit is degenerate") {
        CHECK_THROWS_AS(boundary_detour(sq, {0.5, 0.5}, {0.75, 0.75}),
                        degenerate_configuration);
    }
}

TEST_CASE("verifier: hexagon detour") {
    std::vector<Point> v;
    for (int k = 0; k < 6; ++k)
        v.push_back({std::cos(k * kPi / 3.0), std::sin(k * kPi / 3.0)});
    SimplePolygon hex(v);
    DetourCertificate c = boundary_detour(hex, {-0.2, 0.0}, {0.2, 0.0});
    CHECK(c.forward_arc == Catch::Approx(0.4).margin(1e-9));
    CHECK(c.backward_arc == Catch::Approx(0.4).margin(1e-9));
    CHECK(c.forward_arc + c.backward_arc <= c.perimeter + 1e-9);
    CHECK(c.satisfied);
}

TEST_CASE("verifier: detour property on random star polygons") {
    std::mt19937_64 rng(20260822);
    int done = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int m = 5 + static_cast<int>(rng() % 8);
        std::vector<Point> v;
        for (int i = 0; i < m; ++i) {
            double ang = 2.0 * kPi * (i + 0.6 * uniform01(rng)) / m;
            double rad = uniform_in(rng, 0.4, 1.0);
            v.push_back({rad * std::cos(ang), rad * std::sin(ang)});
        }
        SimplePolygon poly(v);
        for (int attempt = 0; attempt < 50; ++attempt) {
            Point x{uniform_in(rng, -0.14, 0.14), uniform_in(rng, -0.14, 0.14)};
            Point y{uniform_in(rng, -0.14, 0.14), uniform_in(rng, -0.14, 0.14)};
            if (distance(x, y) < 1e-3) continue;
            try {
                DetourCertificate c = boundary_detour(poly, x, y);
                CHECK(c.satisfied);
                CHECK(c.forward_arc > 0.0);
                CHECK(c.backward_arc > 0.0);
                CHECK(c.forward_arc + c.backward_arc <= c.perimeter + 1e-9);
                ++done;
                break;
            } catch (const degenerate_configuration&) {
                continue;
            }
        }
    }
    CHECK(done == 500);
}

TEST_CASE("verifier: accessibility of boundary points") {
    PolygonalDomain d = square_with_slit();

    AccessibilityReport edge_mid = accessibility_curve(d, {0.25, 0.5}, {1.0, 0.5});
    CHECK(edge_mid.convergent);
    CHECK(edge_mid.boundary_value ==
          Catch::Approx(std::hypot(0.25, 0.25) + std::hypot(0.5, 0.25)).margin(1e-12));
    REQUIRE(edge_mid.approach_values.size() == 8);

    AccessibilityReport tip = accessibility_curve(d, {0.25, 0.5}, {0.5, 0.75});
    CHECK(tip.convergent);
    CHECK(tip.boundary_value == Catch::Approx(std::hypot(0.25, 0.25)).margin(1e-12));

    // A point on the slit itself is reachable from either side with the same
    // straight-line value here.
    AccessibilityReport left = accessibility_curve(d, {0.25, 0.5}, {0.5, 0.25});
    AccessibilityReport right = accessibility_curve(d, {0.75, 0.5}, {0.5, 0.25});
    CHECK(left.convergent);
    CHECK(right.convergent);
    CHECK(left.boundary_value == Catch::Approx(std::hypot(0.25, 0.25)).margin(1e-12));
    CHECK(right.boundary_value == Catch::Approx(std::hypot(0.25, 0.25)).margin(1e-12));
}
