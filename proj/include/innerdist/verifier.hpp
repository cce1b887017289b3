#pragma once

#include <cmath>
#include <vector>

#include "innerdist/core.hpp"
#include "innerdist/domain.hpp"
#include "innerdist/geodesic.hpp"

namespace innerdist {

// One checked instance of the length bounds. For a bounded domain the inner
// distance is at most the boundary length; for an unbounded one the straight
// distance must be added. The classic bound multiplies the boundary length by
// pi/2 instead and always starts from the straight distance.
struct BoundReport {
    double inner = 0.0;
    double euclidean = 0.0;
    double h1_e = 0.0;
    double offset = 0.0;  // 0 for bounded domains, euclidean otherwise
    double bound = 0.0;
    double classic_bound = 0.0;
    double margin = 0.0;
    bool bounded = false;
    bool satisfied = false;
    bool classic_satisfied = false;
};

inline BoundReport make_bound_report(const PolygonalDomain& d,
                                     const BoundaryDecomposition& dec, double inner,
                                     const Point& x, const Point& y) {
    BoundReport r;
    r.inner = inner;
    r.euclidean = distance(x, y);
    r.h1_e = dec.h1_E;
    r.bounded = d.bounded();
    r.offset = r.bounded ? 0.0 : r.euclidean;
    r.bound = r.offset + r.h1_e;
    r.classic_bound = r.euclidean + 0.5 * kPi * dec.h1_total;
    r.margin = r.bound - inner;
    r.satisfied = inner <= r.bound + kLengthTol;
    r.classic_satisfied = inner <= r.classic_bound + kLengthTol;
    return r;
}

inline BoundReport verify_main_theorem(const VisibilityEngine& engine,
                                       const PolygonalDomain& d,
                                       const BoundaryDecomposition& dec, const Point& x,
                                       const Point& y) {
    return make_bound_report(d, dec, engine.shortest(x, y).length, x, y);
}

inline BoundReport verify_main_theorem(const PolygonalDomain& d, const Point& x,
                                       const Point& y) {
    VisibilityEngine engine(d);
    return verify_main_theorem(engine, d, decompose_boundary(d), x, y);
}

// Comb domains squeeze the inner distance toward the boundary length as the
// tooth count grows. The sweep pins the query pair just right of the deepest
// tooth and reports distance over boundary length per tooth count.
struct SharpnessEntry {
    int teeth = 0;
    double inner = 0.0;
    double boundary_length = 0.0;
    double ratio = 0.0;
};

struct SharpnessSweep {
    std::vector<SharpnessEntry> entries;
    bool nondecreasing = true;
    bool below_one = true;
};

inline SharpnessSweep sharpness_sweep(const std::vector<int>& teeth = {2, 4, 6, 8, 10}) {
    SharpnessSweep out;
    for (int n : teeth) {
        PolygonalDomain d = comb_domain(n);
        BoundaryDecomposition dec = decompose_boundary(d);
        Point x{0.9, 0.5};
        Point y{1.0 / (4.0 * (n + 1)), 0.5};
        SharpnessEntry e;
        e.teeth = n;
        e.inner = inner_distance(d, x, y);
        e.boundary_length = dec.h1_E;
        e.ratio = e.inner / e.boundary_length;
        if (!out.entries.empty() && e.ratio < out.entries.back().ratio - 1e-12)
            out.nondecreasing = false;
        if (e.ratio >= 1.0) out.below_one = false;
        out.entries.push_back(e);
    }
    return out;
}

// Perpendicular detour construction on a simple polygon: from each query
// point, shoot rays orthogonal to the chord through both points. The four
// first hits split the boundary into arcs; the two arcs joining same-side
// hits are disjoint, so their lengths sum to at most the perimeter.
struct DetourCertificate {
    Point forward_from_x, forward_from_y;    // first hits along the +perpendicular
    Point backward_from_x, backward_from_y;  // first hits along the -perpendicular
    double forward_arc = 0.0;
    double backward_arc = 0.0;
    double perimeter = 0.0;
    bool satisfied = false;
};

namespace detail {

struct RayHit {
    Point p;
    double position;  // arc-length coordinate along the boundary cycle
};

inline RayHit first_boundary_hit(const SimplePolygon& poly, const Point& origin,
                                 const Point& dir) {
    const std::size_t n = poly.vertices.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + distance(poly.vertices[i], poly.vertices[(i + 1) % n]);

    double best_t = std::numeric_limits<double>::infinity();
    RayHit best{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly.vertices[i];
        const Point b = poly.vertices[(i + 1) % n];
        const Point e = b - a;
        const Point ao = a - origin;
        double den = cross(dir, e);
        if (den == 0.0) {
            if (cross(dir, ao) == 0.0)
                throw degenerate_configuration("detour ray runs along a boundary edge");
            continue;
        }
        double t = cross(ao, e) / den;
        double s = cross(ao, dir) / den;
        if (t <= 1e-12 || s < -1e-12 || s > 1.0 + 1e-12) continue;
        if (s < 1e-9 || s > 1.0 - 1e-9)
            throw degenerate_configuration("detour ray grazes a boundary vertex");
        double window = std::isfinite(best_t) ? 1e-12 * (1.0 + best_t) : 0.0;
        if (!std::isfinite(best_t) || t < best_t - window) {
            best_t = t;
            best.p = Point{origin.x + t * dir.x, origin.y + t * dir.y};
            best.position = cum[i] + s * distance(a, b);
        } else if (t < best_t + window) {
            throw degenerate_configuration("detour ray hits two edges at once");
        }
    }
    if (!std::isfinite(best_t))
        throw degenerate_configuration("detour ray escapes the polygon");
    return best;
}

// Length of the boundary arc from pa to pb that avoids both pc and pd, on a
// cycle of circumference total. Throws when neither direction avoids them.
inline double clean_arc(double pa, double pb, double pc, double pd, double total) {
    auto within = [&](double from, double to, double q) {
        double span = to - from;
        if (span < 0) span += total;
        double off = q - from;
        if (off < 0) off += total;
        return off < span;
    };
    bool fwd = !within(pa, pb, pc) && !within(pa, pb, pd);
    bool bwd = !within(pb, pa, pc) && !within(pb, pa, pd);
    double span_fwd = pb - pa;
    if (span_fwd < 0) span_fwd += total;
    if (fwd) return span_fwd;
    if (bwd) return total - span_fwd;
    throw degenerate_configuration("detour hits interleave along the boundary");
}

}  // namespace detail

inline DetourCertificate boundary_detour(const SimplePolygon& poly, const Point& x,
                                         const Point& y) {
    if (x == y) throw invalid_input("detour needs two distinct points");
    if (polygon_contains(poly, x) != Containment::inside ||
        polygon_contains(poly, y) != Containment::inside)
        throw invalid_input("detour points must lie strictly inside the polygon");
    Point chord = y - x;
    double len = std::sqrt(dot(chord, chord));
    Point perp{-chord.y / len, chord.x / len};
    Point anti{chord.y / len, -chord.x / len};

    detail::RayHit fx = detail::first_boundary_hit(poly, x, perp);
    detail::RayHit fy = detail::first_boundary_hit(poly, y, perp);
    detail::RayHit bx = detail::first_boundary_hit(poly, x, anti);
    detail::RayHit by = detail::first_boundary_hit(poly, y, anti);

    DetourCertificate cert;
    cert.forward_from_x = fx.p;
    cert.forward_from_y = fy.p;
    cert.backward_from_x = bx.p;
    cert.backward_from_y = by.p;
    cert.perimeter = poly.perimeter();
    cert.forward_arc =
        detail::clean_arc(fx.position, fy.position, bx.position, by.position, cert.perimeter);
    cert.backward_arc =
        detail::clean_arc(bx.position, by.position, fx.position, fy.position, cert.perimeter);
    cert.satisfied = cert.forward_arc + cert.backward_arc <= cert.perimeter + kLengthTol;
    return cert;
}

// Walks toward a boundary point along the last leg of its geodesic and checks
// that the inner distance varies by no more than the step, so the boundary
// value is the limit from inside.
struct AccessibilityReport {
    double boundary_value = 0.0;
    std::vector<double> approach_values;
    std::vector<double> approach_gaps;
    bool convergent = true;
};

inline AccessibilityReport accessibility_curve(const PolygonalDomain& d, const Point& x,
                                               const Point& y, int steps = 8) {
    VisibilityEngine engine(d);
    GeodesicPath base = engine.shortest(x, y);
    if (base.vertices.size() < 2)
        throw invalid_input("accessibility needs two distinct query points");
    AccessibilityReport rep;
    rep.boundary_value = base.length;
    const Point w = base.vertices[base.vertices.size() - 2];
    double t = 0.5;
    for (int k = 0; k < steps; ++k, t *= 0.5) {
        Point yk{y.x + t * (w.x - y.x), y.y + t * (w.y - y.y)};
        double vk = engine.shortest(x, yk).length;
        double gap = distance(yk, y);
        rep.approach_values.push_back(vk);
        rep.approach_gaps.push_back(gap);
        if (std::abs(vk - rep.boundary_value) > gap + kLengthTol) rep.convergent = false;
    }
    return rep;
}

}  // namespace innerdist
