#include <catch_amalgamated.hpp>

#include <innerdist/oracle.hpp>

#include <cmath>
#include <cstdio>
#include <random>

using namespace innerdist;

namespace {

PolygonalDomain single_slit() {
    PolygonalDomain d;
    d.slits.push_back(Polyline({{0, -1}, {0, 1}}));
    return d;
}

PolygonalDomain square_with_slit() {
    PolygonalDomain d;
    d.outer = SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    d.slits.push_back(Polyline({{0.5, 0.0}, {0.5, 0.75}}));
    return d;
}

}  // namespace

TEST_CASE("oracle: free plane straight shot") {
    PolygonalDomain d;
    GridPathResult r = grid_oracle(d, {0, 0}, {1, 0}, 0.1);
    CHECK(r.value == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.path.front() == Point{0, 0});
    CHECK(r.path.back() == Point{1, 0});
}

TEST_CASE("oracle: slit detour near 2*sqrt(2)") {
    PolygonalDomain d = single_slit();
    double exact = 2.0 * std::sqrt(2.0);
    double v = grid_oracle_value(d, {-1, 0}, {1, 0}, 0.01);
    CHECK(v >= exact - 1e-9);
    CHECK(v <= exact * 1.02);
    // Regression baseline recorded from the first run of this construction.
    CHECK(v == Catch::Approx(2.8448642130487301).epsilon(1e-12));
}

TEST_CASE("oracle: never undershoots the straight-line distance") {
    PolygonalDomain d = square_with_slit();
    std::mt19937_64 rng(17);
    auto u = [&] { return 0.05 + 0.9 * ((rng() >> 11) * 0x1.0p-53); };
    for (int t = 0; t < 8; ++t) {
        Point a{u(), u()}, b{u(), u()};
        if (contains(d, a) != Containment::inside || contains(d, b) != Containment::inside)
            continue;
        double v = grid_oracle_value(d, a, b, 1.0 / 64);
        CHECK(v >= distance(a, b) - 1e-9);
    }
}

TEST_CASE("oracle: refinement does not increase the value") {
    PolygonalDomain d = square_with_slit();
    Point a{0.25, 0.5}, b{0.75, 0.5};
    double v6 = grid_oracle_value(d, a, b, 0x1.0p-6);
    double v8 = grid_oracle_value(d, a, b, 0x1.0p-8);
    double v10 = grid_oracle_value(d, a, b, 0x1.0p-10);
    CHECK(v8 <= v6 + 1e-9);
    CHECK(v10 <= v8 + 1e-9);
    double exact = std::sqrt(2.0) / 2.0;
    CHECK(v10 >= exact - 1e-9);
    CHECK(v10 <= exact * 1.02);
}

TEST_CASE("oracle: unreachable at coarse resolution raises") {
    // Query points boxed in by a tight slit square: no lattice connection.
    PolygonalDomain d;
    d.outer = SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    d.slits.push_back(
        Polyline({{0.45, 0.45}, {0.55, 0.45}, {0.55, 0.55}, {0.45, 0.55}, {0.45, 0.45}}));
    CHECK_THROWS_AS(grid_oracle(d, {0.5, 0.5}, {0.25, 0.25}, 1.0 / 8), unreachable_error);
}

// Hidden helper: prints the oracle values that back the frozen constants in
// the sweep and geodesic tests.  Run with: unit_tests "[baseline]"
TEST_CASE("oracle baseline dump", "[.baseline]") {
    double h = 0x1.0p-10;
    for (int n : {2, 4, 6, 8, 10}) {
        PolygonalDomain d = comb_domain(n);
        Point x{0.9, 0.5}, y{1.0 / (4.0 * (n + 1)), 0.5};
        double v = grid_oracle_value(d, x, y, h);
        std::printf("comb(%d) sweep pair: oracle %.17g\n", n, v);
    }
    std::printf("comb(4) mid pair: oracle %.17g\n",
                grid_oracle_value(comb_domain(4), {0.9, 0.5}, {0.05, 0.5}, h));
    std::printf("comb(10) mid pair: oracle %.17g\n",
                grid_oracle_value(comb_domain(10), {0.9, 0.5}, {0.02, 0.5}, h));
    std::printf("slit pair: oracle %.17g\n",
                grid_oracle_value(single_slit(), {-1, 0}, {1, 0}, 0.01));
    std::printf("square+slit pair: oracle %.17g\n",
                grid_oracle_value(square_with_slit(), {0.25, 0.5}, {0.75, 0.5}, h));
}
