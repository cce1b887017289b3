#include <catch_amalgamated.hpp>

#include <innerdist/core.hpp>

#include <cmath>
#include <random>

using namespace innerdist;

TEST_CASE("orientation signs and exactness") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);

    // Near-degenerate: c on the line through a,b up to the last ulp.
    Point a{0, 0}, b{1e-30, 1e-30};
    CHECK(orientation(a, b, {1e30, 1e30}) == 0);
    CHECK(orientation(a, b, {1e30, std::nextafter(1e30, 2e30)}) == 1);
    CHECK(orientation(a, b, {1e30, std::nextafter(1e30, 0.0)}) == -1);

    CHECK_THROWS_AS(orientation({0, 0}, {1, 0}, {0, std::nan("")}), invalid_input);
}

TEST_CASE("orientation antisymmetry on adversarial triples") {
    std::mt19937_64 rng(7);
    auto coord = [&] {
        // Mix of exact grid values and tiny perturbations to stress the filter.
        double base = static_cast<double>(static_cast<int>(rng() % 41)) / 8.0 - 2.5;
        if (rng() % 3 == 0) base = std::nextafter(base, 4.0 * (rng() % 2) - 2.0);
        return base;
    };
    for (int t = 0; t < 20000; ++t) {
        Point p{coord(), coord()}, q{coord(), coord()}, r{coord(), coord()};
        int o = orientation(p, q, r);
        CHECK(o == -orientation(p, r, q));
        CHECK(o == orientation(q, r, p));
    }
}

TEST_CASE("proper_cross distinguishes crossing kinds") {
    Segment s({0, 0}, {2, 0});
    CHECK(proper_cross(s, Segment({1, -1}, {1, 1})));
    CHECK_FALSE(proper_cross(s, Segment({1, 0}, {1, 1})));     // T-contact
    CHECK_FALSE(proper_cross(s, Segment({2, 0}, {3, 1})));     // endpoint contact
    CHECK_FALSE(proper_cross(s, Segment({1, 0}, {3, 0})));     // collinear overlap
    CHECK_FALSE(proper_cross(s, Segment({0, 1}, {2, 1})));     // disjoint
    CHECK_THROWS_AS(Segment({1, 1}, {1, 1}), invalid_input);
}

TEST_CASE("polygon containment") {
    SimplePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(polygon_contains(sq, {0.5, 0.5}) == Containment::inside);
    CHECK(polygon_contains(sq, {0.5, 0.0}) == Containment::boundary);
    CHECK(polygon_contains(sq, {0.0, 0.0}) == Containment::boundary);
    CHECK(polygon_contains(sq, {1.5, 0.5}) == Containment::outside);
    CHECK(polygon_contains(sq, {-1e-18, 0.5}) == Containment::outside);

    // Nonconvex: vertex-ray alignment must not double count.
    SimplePolygon zig({{0, 0}, {4, 0}, {4, 3}, {2, 1}, {0, 3}});
    CHECK(polygon_contains(zig, {2, 0.5}) == Containment::inside);
    CHECK(polygon_contains(zig, {2, 2}) == Containment::outside);
    CHECK(polygon_contains(zig, {2, 1}) == Containment::boundary);
}

TEST_CASE("simple polygon validation") {
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {1, 0}}), validation_error);
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {1, 0}, {2, 0}}), validation_error);
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), validation_error);
    CHECK_THROWS_AS(SimplePolygon({{0, 0}, {1, 0}, {0.5, 0}, {0.5, 1}}), validation_error);
    CHECK_NOTHROW(SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    // Collinear consecutive vertices are fine as long as nothing folds back.
    CHECK_NOTHROW(SimplePolygon({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("convex hull kinds and determinism") {
    std::vector<Point> sq{{0, 0}, {1, 1}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.5, 0.0}};
    ConvexHull h = convex_hull(sq);
    REQUIRE(h.kind == ConvexHull::Kind::polygon);
    std::vector<Point> want{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(h.boundary_vertices == want);
    CHECK(hull_boundary_h1(h) == Catch::Approx(4.0));

    ConvexHull seg = convex_hull(std::vector<Point>{{2, 2}, {0, 0}, {1, 1}});
    REQUIRE(seg.kind == ConvexHull::Kind::segment);
    CHECK(seg.boundary_vertices.front() == Point{0, 0});
    CHECK(seg.boundary_vertices.back() == Point{2, 2});
    CHECK(hull_boundary_h1(seg) == Catch::Approx(std::sqrt(8.0)));

    ConvexHull pt = convex_hull(std::vector<Point>{{3, 4}, {3, 4}});
    REQUIRE(pt.kind == ConvexHull::Kind::point);
    CHECK(hull_boundary_h1(pt) == 0.0);
}

TEST_CASE("hull is idempotent and order independent on random input") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<Point> pts;
        for (int i = 0; i < 40; ++i) pts.push_back({u(rng), u(rng)});
        ConvexHull h1 = convex_hull(pts);
        std::shuffle(pts.begin(), pts.end(), rng);
        ConvexHull h2 = convex_hull(pts);
        CHECK(h1.boundary_vertices == h2.boundary_vertices);
        ConvexHull h3 = convex_hull(h1.boundary_vertices);
        CHECK(h3.boundary_vertices == h1.boundary_vertices);
        // Every input point inside or on the hull.
        if (h1.kind == ConvexHull::Kind::polygon) {
            SimplePolygon poly(h1.boundary_vertices);
            for (const Point& p : pts) CHECK(polygon_contains(poly, p) != Containment::outside);
        }
    }
}

TEST_CASE("point segment distance") {
    CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == Catch::Approx(1.0));
    CHECK(point_segment_distance({2, 1}, {-1, 0}, {1, 0}) == Catch::Approx(std::sqrt(2.0)));
}
