#pragma once

// Exact planar primitives: points, segments, polygons, orientation tests and
// convex hulls.  Everything downstream (domains, visibility, covers) sits on
// the predicates in this header, so orientation and on_segment are exact for
// all finite double inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace innerdist {

// Default absolute tolerance for length comparisons.
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kLengthTol = 1e-9;
// Tolerance for sums that are exact up to accumulated rounding.
inline constexpr double kExactTol = 1e-12;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed arguments: non-finite coordinates, out-of-range indices, points
// outside the domain closure.
struct invalid_input : error {
    using error::error;
};
// A structural invariant of a composite object fails (self-crossing polygon,
// overlapping boundary features, disconnected domain).
struct validation_error : error {
    using error::error;
};
// No path exists between the query points at the requested representation.
struct unreachable_error : error {
    using error::error;
};
// A construction hit a tangency or ordering it cannot certify.
struct degenerate_configuration : error {
    using error::error;
};
// Requested tolerance cannot be met by the construction parameters.
struct infeasible_tolerance : error {
    using error::error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

inline bool lex_less(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

namespace detail {

// Error-free transforms and expansion arithmetic, after Shewchuk.  An
// expansion is an array of doubles of increasing magnitude whose exact sum is
// the represented value; the sign of the value is the sign of the largest
// component.

inline void two_sum(double a, double b, double& hi, double& lo) {
    double x = a + b;
    double bv = x - a;
    double av = x - bv;
    lo = (a - av) + (b - bv);
    hi = x;
}

inline void two_diff(double a, double b, double& hi, double& lo) {
    double x = a - b;
    double bv = a - x;
    double av = x + bv;
    lo = (a - av) + (bv - b);
    hi = x;
}

inline void two_prod(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

// (a1,a0) - b -> (x2,x1,x0)
inline void two_one_diff(double a1, double a0, double b, double& x2, double& x1, double& x0) {
    double i;
    two_diff(a0, b, i, x0);
    two_sum(a1, i, x2, x1);
}

// (a1,a0) - (b1,b0) -> (x3,x2,x1,x0)
inline void two_two_diff(double a1, double a0, double b1, double b0, double x[4]) {
    double j, r0;
    two_one_diff(a1, a0, b0, j, r0, x[0]);
    two_one_diff(j, r0, b1, x[3], x[2], x[1]);
}

// Merges two expansions; strongly nonoverlapping output, zero components
// dropped.  Returns the output length (>= 1, a lone zero if the sum is zero).
inline int fast_expansion_sum_zeroelim(int elen, const double* e, int flen, const double* f,
                                       double* h) {
    double q, qnew, hh;
    int eindex = 0, findex = 0, hindex = 0;
    double enow = e[0], fnow = f[0];
    if ((fnow > enow) == (fnow > -enow)) {
        q = enow;
        ++eindex;
    } else {
        q = fnow;
        ++findex;
    }
    while (eindex < elen && findex < flen) {
        enow = e[eindex];
        fnow = f[findex];
        if ((fnow > enow) == (fnow > -enow)) {
            two_sum(q, enow, qnew, hh);
            ++eindex;
        } else {
            two_sum(q, fnow, qnew, hh);
            ++findex;
        }
        q = qnew;
        if (hh != 0.0) h[hindex++] = hh;
    }
    while (eindex < elen) {
        two_sum(q, e[eindex++], qnew, hh);
        q = qnew;
        if (hh != 0.0) h[hindex++] = hh;
    }
    while (findex < flen) {
        two_sum(q, f[findex++], qnew, hh);
        q = qnew;
        if (hh != 0.0) h[hindex++] = hh;
    }
    if (q != 0.0 || hindex == 0) h[hindex++] = q;
    return hindex;
}

// Exact sign of det[[ax-cx, ay-cy], [bx-cx, by-cy]] computed from the raw
// coordinates (no difference rounding): the determinant expands to
// ax*by - ax*cy + ay*cx - ay*bx + bx*cy - by*cx.
inline int orient2d_exact(const Point& pa, const Point& pb, const Point& pc) {
    double t1, t0, s1, s0;
    double a[4], b[4], c[4], u[8], w[12];

    two_prod(pa.x, pb.y, t1, t0);
    two_prod(pa.x, pc.y, s1, s0);
    two_two_diff(t1, t0, s1, s0, a);

    two_prod(pb.x, pc.y, t1, t0);
    two_prod(pb.x, pa.y, s1, s0);
    two_two_diff(t1, t0, s1, s0, b);

    two_prod(pc.x, pa.y, t1, t0);
    two_prod(pc.x, pb.y, s1, s0);
    two_two_diff(t1, t0, s1, s0, c);

    int ulen = fast_expansion_sum_zeroelim(4, a, 4, b, u);
    int wlen = fast_expansion_sum_zeroelim(ulen, u, 4, c, w);
    double msc = w[wlen - 1];
    return (msc > 0.0) - (msc < 0.0);
}

inline constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
inline constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEps) * kEps;

}  // namespace detail

// Sign of the signed area of triangle (p, q, r): +1 counterclockwise, -1
// clockwise, 0 collinear.  Exact: a floating-point filter falls back to
// expansion arithmetic when the estimate is within its error bound.
inline int orientation(const Point& p, const Point& q, const Point& r) {
    if (!finite(p) || !finite(q) || !finite(r))
        throw invalid_input("orientation: non-finite coordinate");
    double detleft = (q.x - p.x) * (r.y - p.y);
    double detright = (q.y - p.y) * (r.x - p.x);
    double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return (det > 0.0) - (det < 0.0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return (det > 0.0) - (det < 0.0);
        detsum = -detleft - detright;
    } else {
        return (det > 0.0) - (det < 0.0);
    }
    double errbound = detail::kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return (det > 0.0) - (det < 0.0);
    return detail::orient2d_exact(p, q, r);
}

// True iff p lies on the closed segment [a, b].  Exact.
inline bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

struct Segment {
    Point a;
    Point b;

    Segment(Point a_, Point b_) : a(a_), b(b_) {
        if (!finite(a) || !finite(b)) throw invalid_input("Segment: non-finite endpoint");
        if (a == b) throw invalid_input("Segment: endpoints coincide");
    }
    double length() const { return distance(a, b); }
};

// True iff the open segments cross in a single point interior to both.
// Endpoint contacts, T-contacts and collinear overlaps all return false.
inline bool proper_cross(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    if (o1 * o2 >= 0) return false;
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    return o3 * o4 < 0;
}

// True iff closed segments [a,b] and [c,d] share at least one point.
inline bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

struct Polyline {
    std::vector<Point> vertices;

    explicit Polyline(std::vector<Point> v) : vertices(std::move(v)) {
        if (vertices.size() < 2) throw invalid_input("Polyline: fewer than two vertices");
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (!finite(vertices[i])) throw invalid_input("Polyline: non-finite vertex");
            if (i > 0 && vertices[i] == vertices[i - 1])
                throw invalid_input("Polyline: consecutive vertices coincide");
        }
    }
    double length() const {
        double s = 0.0;
        for (std::size_t i = 1; i < vertices.size(); ++i)
            s += distance(vertices[i - 1], vertices[i]);
        return s;
    }
};

enum class Containment { inside, boundary, outside };

namespace detail {

// Crossing-parity point-in-polygon over exact orientation tests; the caller
// has already ruled out boundary points.
inline bool strictly_inside_ring(std::span<const Point> ring, const Point& p) {
    bool in = false;
    std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[j];
        const Point& b = ring[i];
        if ((a.y > p.y) != (b.y > p.y)) {
            // Edge straddles the horizontal through p; exact side test decides
            // whether the upward ray from p crosses it.
            int side = orientation(a, b, p);
            if (b.y > a.y ? side > 0 : side < 0) in = !in;
        }
    }
    return in;
}

}  // namespace detail

struct SimplePolygon {
    std::vector<Point> vertices;

    explicit SimplePolygon(std::vector<Point> v) : vertices(std::move(v)) {
        if (vertices.size() < 3) throw validation_error("SimplePolygon: fewer than three vertices");
        std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!finite(vertices[i])) throw invalid_input("SimplePolygon: non-finite vertex");
            if (vertices[i] == vertices[(i + 1) % n])
                throw validation_error("SimplePolygon: consecutive vertices coincide");
        }
        // Simplicity: non-adjacent edges must be disjoint, adjacent edges may
        // share only their common endpoint (no fold-back spikes).
        for (std::size_t i = 0; i < n; ++i) {
            Point a = vertices[i], b = vertices[(i + 1) % n];
            for (std::size_t j = i + 1; j < n; ++j) {
                Point c = vertices[j], d = vertices[(j + 1) % n];
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) {
                    const Point& shared = (j == i + 1) ? b : a;
                    const Point& e1 = (j == i + 1) ? a : b;
                    const Point& e2 = (j == i + 1) ? d : c;
                    if (orientation(e1, shared, e2) == 0 && dot(shared - e1, e2 - shared) < 0)
                        throw validation_error("SimplePolygon: zero-area spike at vertex");
                    continue;
                }
                if (segments_touch(a, b, c, d))
                    throw validation_error("SimplePolygon: non-adjacent edges intersect");
            }
        }
        bool noncollinear = false;
        for (std::size_t i = 2; i < n && !noncollinear; ++i)
            noncollinear = orientation(vertices[0], vertices[i - 1], vertices[i]) != 0;
        if (!noncollinear) throw validation_error("SimplePolygon: all vertices collinear");
    }

    std::size_t size() const { return vertices.size(); }
    Segment edge(std::size_t i) const {
        return Segment(vertices[i], vertices[(i + 1) % vertices.size()]);
    }
    double signed_area() const {
        double s = 0.0;
        std::size_t n = vertices.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) s += cross(vertices[j], vertices[i]);
        return 0.5 * s;
    }
    double perimeter() const {
        double s = 0.0;
        std::size_t n = vertices.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++)
            s += distance(vertices[j], vertices[i]);
        return s;
    }
    bool is_ccw() const { return signed_area() > 0.0; }
};

inline Containment polygon_contains(const SimplePolygon& poly, const Point& p) {
    if (!finite(p)) throw invalid_input("polygon_contains: non-finite point");
    std::size_t n = poly.vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        if (on_segment(p, poly.vertices[j], poly.vertices[i])) return Containment::boundary;
    return detail::strictly_inside_ring(poly.vertices, p) ? Containment::inside
                                                          : Containment::outside;
}

struct ConvexHull {
    enum class Kind { polygon, segment, point };
    Kind kind = Kind::point;
    // polygon: strictly convex, counterclockwise, starting at the
    // lexicographically smallest vertex.  segment: the two extreme points.
    // point: a single point.
    std::vector<Point> boundary_vertices;
};

// Monotone chain with lexicographic ordering; collinear points are dropped so
// polygon hulls are strictly convex.  Deterministic for any input order.
inline ConvexHull convex_hull(std::span<const Point> points) {
    if (points.empty()) throw invalid_input("convex_hull: empty input");
    std::vector<Point> pts(points.begin(), points.end());
    for (const Point& p : pts)
        if (!finite(p)) throw invalid_input("convex_hull: non-finite point");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ConvexHull hull;
    if (pts.size() == 1) {
        hull.kind = ConvexHull::Kind::point;
        hull.boundary_vertices = {pts[0]};
        return hull;
    }
    bool collinear = true;
    for (std::size_t i = 2; i < pts.size() && collinear; ++i)
        collinear = orientation(pts[0], pts[i - 1], pts[i]) == 0;
    if (collinear) {
        hull.kind = ConvexHull::Kind::segment;
        hull.boundary_vertices = {pts.front(), pts.back()};
        return hull;
    }

    std::vector<Point> chain(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orientation(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
        chain[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orientation(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
        chain[k++] = pts[i];
    }
    chain.resize(k - 1);
    hull.kind = ConvexHull::Kind::polygon;
    hull.boundary_vertices = std::move(chain);
    return hull;
}

// Length of the hull boundary.  A segment hull is itself its boundary, so its
// length counts once; a point hull has length zero.
inline double hull_boundary_h1(const ConvexHull& hull) {
    switch (hull.kind) {
        case ConvexHull::Kind::point:
            return 0.0;
        case ConvexHull::Kind::segment:
            return distance(hull.boundary_vertices[0], hull.boundary_vertices[1]);
        case ConvexHull::Kind::polygon: {
            double s = 0.0;
            std::size_t n = hull.boundary_vertices.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++)
                s += distance(hull.boundary_vertices[j], hull.boundary_vertices[i]);
            return s;
        }
    }
    return 0.0;
}

inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

struct BoundingBox {
    Point min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void expand(const Point& p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
    }
    bool empty() const { return min.x > max.x; }
    double extent() const { return empty() ? 0.0 : std::max(max.x - min.x, max.y - min.y); }
};

}  // namespace innerdist
