#pragma once

#include <cmath>
#include <deque>
#include <vector>

#include "innerdist/core.hpp"
#include "innerdist/domain.hpp"
#include "innerdist/geodesic.hpp"

namespace innerdist {

// A connected union of segments, e.g. one positive-length boundary component.
struct ConnectedSet {
    std::vector<Segment> segments;
    double h1 = 0.0;
};

inline ConnectedSet make_connected_set(std::vector<Segment> segments) {
    if (segments.empty()) throw invalid_input("connected set needs at least one segment");
    ConnectedSet s;
    s.segments = std::move(segments);
    for (const Segment& seg : s.segments) s.h1 += distance(seg.a, seg.b);
    return s;
}

struct SetPiece {
    std::vector<Segment> segments;
    Point seed;
    double h1 = 0.0;
};

// Chops the set into connected pieces of diameter at most twice the radius.
// Each round picks the lexicographically smallest endpoint still uncovered,
// grows along the segments, and cuts exactly where they leave the ball.
inline std::vector<SetPiece> split_connected_set(const ConnectedSet& set, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw invalid_input("split radius must be positive");
    std::vector<Segment> pool = set.segments;
    std::vector<SetPiece> pieces;
    const double r2 = radius * radius;
    while (!pool.empty()) {
        Point seed = pool.front().a;
        for (const Segment& s : pool) {
            if (lex_less(s.a, seed)) seed = s.a;
            if (lex_less(s.b, seed)) seed = s.b;
        }
        SetPiece piece;
        piece.seed = seed;
        std::deque<Point> frontier{seed};
        while (!frontier.empty()) {
            Point anchor = frontier.front();
            frontier.pop_front();
            for (std::size_t i = 0; i < pool.size();) {
                Segment s = pool[i];
                if (!(s.a == anchor) && !(s.b == anchor)) {
                    ++i;
                    continue;
                }
                Point near = s.a == anchor ? s.a : s.b;
                Point far = s.a == anchor ? s.b : s.a;
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
                Point dfar = far - seed;
                if (dot(dfar, dfar) <= r2) {
                    piece.segments.emplace_back(near, far);
                    piece.h1 += distance(near, far);
                    frontier.push_back(far);
                    continue;
                }
                // First circle crossing from the inside point toward far.
                Point d = far - near;
                Point rel = near - seed;
                double qa = dot(d, d);
                double qb = 2.0 * dot(d, rel);
                double qc = dot(rel, rel) - r2;
                double disc = qb * qb - 4.0 * qa * qc;
                double t = disc <= 0.0 ? 0.0 : (-qb + std::sqrt(disc)) / (2.0 * qa);
                if (t > 0.0) {
                    Point cut{near.x + t * d.x, near.y + t * d.y};
                    piece.segments.emplace_back(near, cut);
                    piece.h1 += distance(near, cut);
                    pool.insert(pool.begin() + static_cast<std::ptrdiff_t>(i),
                                Segment(cut, far));
                    ++i;
                } else {
                    pool.insert(pool.begin() + static_cast<std::ptrdiff_t>(i),
                                Segment(near, far));
                    ++i;
                }
            }
        }
        if (piece.segments.empty())
            throw degenerate_configuration("split made no progress from its seed");
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

// Convex hull boundary traversed as a curve: a flat hull is walked on both
// sides. This is the quantity bounded by twice the length of any connected
// set, and the bound is approached by a nearly flat bent segment.
struct HullLengthReport {
    double hull_curve = 0.0;
    double h1 = 0.0;
    double ratio = 0.0;
    bool satisfied = false;
};

inline double hull_curve_length(const ConvexHull& hull) {
    if (hull.kind == ConvexHull::Kind::point) return 0.0;
    const auto& v = hull.boundary_vertices;
    if (hull.kind == ConvexHull::Kind::segment) return 2.0 * distance(v.front(), v.back());
    double len = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) len += distance(v[i], v[(i + 1) % v.size()]);
    return len;
}

inline HullLengthReport hull_double_length_check(const ConnectedSet& set) {
    std::vector<Point> pts;
    for (const Segment& s : set.segments) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    HullLengthReport rep;
    rep.hull_curve = hull_curve_length(convex_hull(pts));
    rep.h1 = set.h1;
    rep.ratio = set.h1 > 0.0 ? rep.hull_curve / set.h1 : 0.0;
    rep.satisfied = rep.hull_curve <= 2.0 * set.h1 + kLengthTol;
    return rep;
}

struct CoverPatch {
    std::vector<Point> boundary;  // counterclockwise closed polygon
    double length = 0.0;
};

struct CoverCertificate {
    std::vector<SetPiece> pieces;
    std::vector<CoverPatch> patches;
    double h1 = 0.0;
    double epsilon = 0.0;
    double total_boundary = 0.0;
    double budget = 0.0;  // 2 h1 + epsilon
    bool within_budget = false;
    bool covers = false;
};

namespace detail {

inline Point rotate(const Point& p, double ang) {
    double c = std::cos(ang), s = std::sin(ang);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Outward offset of a convex hull at distance delta, with circular arcs
// replaced by inscribed chords. Chords keep the boundary inside the true
// offset, so the length can only shrink, while every point of the hull stays
// at distance at least delta*cos(pi/steps) inside.
inline CoverPatch offset_patch(const ConvexHull& hull, double delta, int steps) {
    CoverPatch patch;
    if (hull.kind == ConvexHull::Kind::point) {
        const Point c = hull.boundary_vertices.front();
        for (int j = 0; j < steps; ++j) {
            double a = 2.0 * kPi * j / steps;
            patch.boundary.push_back({c.x + delta * std::cos(a), c.y + delta * std::sin(a)});
        }
    } else {
        std::vector<Point> ring = hull.boundary_vertices;
        if (hull.kind == ConvexHull::Kind::segment) ring = {ring.front(), ring.back()};
        const std::size_t m = ring.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Point v = ring[i];
            const Point prev = ring[(i + m - 1) % m];
            const Point next = ring[(i + 1) % m];
            Point din = v - prev, dout = next - v;
            double lin = std::sqrt(dot(din, din)), lout = std::sqrt(dot(dout, dout));
            Point n_in{din.y / lin, -din.x / lin};
            Point n_out{dout.y / lout, -dout.x / lout};
            double a0 = std::atan2(n_in.y, n_in.x);
            double a1 = std::atan2(n_out.y, n_out.x);
            double turn = a1 - a0;
            while (turn < 0.0) turn += 2.0 * kPi;
            int k = std::max(1, static_cast<int>(std::ceil(steps * turn / (2.0 * kPi))));
            for (int j = 0; j < k; ++j) {
                Point n = rotate(n_in, turn * j / k);
                patch.boundary.push_back({v.x + delta * n.x, v.y + delta * n.y});
            }
            patch.boundary.push_back({v.x + delta * n_out.x, v.y + delta * n_out.y});
        }
    }
    const std::size_t n = patch.boundary.size();
    for (std::size_t i = 0; i < n; ++i)
        patch.length += distance(patch.boundary[i], patch.boundary[(i + 1) % n]);
    return patch;
}

}  // namespace detail

// Surrounds the set by closed curves of total length at most 2 H1 + epsilon:
// split into pieces of diameter below the clearance, take each convex hull
// (its curve is at most twice the piece length), and push it out by a delta
// small enough that the added arc length stays under epsilon.
inline CoverCertificate painleve_cover(const ConnectedSet& set, double epsilon,
                                       double clearance) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw invalid_input("cover epsilon must be positive");
    if (!(clearance > 0.0) || !std::isfinite(clearance))
        throw invalid_input("cover clearance must be positive");
    CoverCertificate cert;
    cert.h1 = set.h1;
    cert.epsilon = epsilon;
    cert.budget = 2.0 * set.h1 + epsilon;
    cert.pieces = split_connected_set(set, clearance / 2.0);
    const double n_pieces = static_cast<double>(cert.pieces.size());
    double delta = std::min(epsilon / (4.0 * kPi * n_pieces), clearance / 4.0);
    double scale = 1e-300;
    for (const SetPiece& piece : cert.pieces)
        for (const Segment& s : piece.segments)
            scale = std::max({scale, std::fabs(s.a.x), std::fabs(s.a.y), std::fabs(s.b.x),
                              std::fabs(s.b.y)});
    for (int round = 0; round < 4; ++round, delta *= 0.5) {
        // An offset below a few ulps of the coordinate scale collapses onto
        // the hull itself, so the requested epsilon cannot be certified.
        if (delta < scale * 0x1p-50)
            throw infeasible_tolerance(
                "cover epsilon leaves no room for the offset at this discretization");
        cert.patches.clear();
        cert.total_boundary = 0.0;
        cert.covers = true;
        try {
            for (const SetPiece& piece : cert.pieces) {
                std::vector<Point> pts;
                for (const Segment& s : piece.segments) {
                    pts.push_back(s.a);
                    pts.push_back(s.b);
                }
                CoverPatch patch = detail::offset_patch(convex_hull(pts), delta, 256);
                cert.total_boundary += patch.length;

                SimplePolygon poly(patch.boundary);
                for (const Segment& s : piece.segments) {
                    for (int j = 0; j <= 17 && cert.covers; ++j) {
                        double t = j / 17.0;
                        Point sample{s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
                        if (polygon_contains(poly, sample) != Containment::inside)
                            cert.covers = false;
                    }
                    if (!cert.covers) break;
                }
                cert.patches.push_back(std::move(patch));
                if (!cert.covers) break;
            }
        } catch (const validation_error&) {
            // The offset is below the resolution the patch polygons can
            // represent, so the requested epsilon cannot be certified.
            throw infeasible_tolerance(
                "cover epsilon leaves no room for the offset at this discretization");
        }
        cert.within_budget = cert.total_boundary <= cert.budget + kExactTol;
        if (cert.within_budget) return cert;
    }
    throw infeasible_tolerance("cover exceeds its budget at every retried offset");
}

// Mechanical form of the sharp estimate through covers: the inner distance is
// at most the straight distance (dropped for bounded domains) plus half the
// total cover length, and the cover length is at most 2 H1 + epsilon.
struct PiBoundReport {
    double inner = 0.0;
    double euclidean = 0.0;
    double h1 = 0.0;
    double epsilon = 0.0;
    double cover_total = 0.0;
    double offset = 0.0;
    double bound = 0.0;
    bool bounded = false;
    bool covers_valid = false;
    bool within_budget = false;
    bool bound_holds = false;
};

inline PiBoundReport pi_bound_check(const PolygonalDomain& d, const Point& x,
                                    const Point& y, double epsilon,
                                    double clearance = 0.1) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw invalid_input("epsilon must be positive");
    BoundaryDecomposition dec = decompose_boundary(d);
    PiBoundReport rep;
    rep.epsilon = epsilon;
    rep.h1 = dec.h1_E;
    rep.bounded = d.bounded();
    rep.covers_valid = true;

    std::size_t n_pos = 0, n_pts = 0;
    for (const BoundaryComponent& c : dec.components) (c.is_point() ? n_pts : n_pos) += 1;

    for (const BoundaryComponent& c : dec.components) {
        if (c.is_point()) {
            double rad = std::min(epsilon / (4.0 * kPi * static_cast<double>(n_pts)),
                                  clearance / 2.0);
            ConvexHull h;
            h.kind = ConvexHull::Kind::point;
            h.boundary_vertices = {c.vertices.front()};
            CoverPatch patch = detail::offset_patch(h, rad, 256);
            SimplePolygon poly(patch.boundary);
            if (polygon_contains(poly, c.vertices.front()) != Containment::inside)
                rep.covers_valid = false;
            rep.cover_total += patch.length;
        } else {
            ConnectedSet set = make_connected_set(c.segments);
            CoverCertificate cert = painleve_cover(
                set, epsilon / (2.0 * static_cast<double>(n_pos)), clearance);
            if (!cert.within_budget || !cert.covers) rep.covers_valid = false;
            rep.cover_total += cert.total_boundary;
        }
    }

    rep.inner = inner_distance(d, x, y);
    rep.euclidean = distance(x, y);
    rep.offset = rep.bounded ? 0.0 : rep.euclidean;
    rep.bound = rep.offset + 0.5 * rep.cover_total;
    rep.within_budget = rep.cover_total <= 2.0 * rep.h1 + epsilon + kExactTol;
    rep.bound_holds = rep.inner <= rep.bound + kLengthTol;
    return rep;
}

}  // namespace innerdist
