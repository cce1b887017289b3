#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "innerdist/core.hpp"

namespace innerdist {

// Self-similar family of disks inside the closed unit disk.  Stage i carries
// 2^i contractions of ratio 2^{-i} whose images are internally tangent to the
// unit circle at the angles 2 pi j / 2^i.  Composing one map from every stage
// 2..k gives 2^{k(k+1)/2 - 1} disks of equal radius whose diameters always
// sum to exactly 2, while the family spreads along the whole circle.

struct FractalLevel {
    int level = 1;
    double radius = 1.0;
    std::vector<Point> centers;
};

inline FractalLevel fractal_level(int k) {
    if (k < 1 || k > 6) throw invalid_input("fractal level must be between 1 and 6");
    FractalLevel out;
    out.level = k;
    out.centers = {{0.0, 0.0}};
    double scale = 1.0;
    for (int i = 2; i <= k; ++i) {
        const int fan = 1 << i;
        const double rho = 1.0 - std::ldexp(1.0, -i);
        const double step = 2.0 * kPi / fan;
        std::vector<Point> next;
        next.reserve(out.centers.size() * static_cast<std::size_t>(fan));
        for (const Point& c : out.centers) {
            for (int j = 1; j <= fan; ++j) {
                double ang = step * j;
                next.push_back({c.x + scale * rho * std::cos(ang),
                                c.y + scale * rho * std::sin(ang)});
            }
        }
        out.centers.swap(next);
        scale *= std::ldexp(1.0, -i);
    }
    out.radius = scale;
    return out;
}

namespace detail {

inline double brute_min_gap(const std::vector<Point>& c, double r) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            best = std::min(best, distance(c[i], c[j]) - 2.0 * r);
    return best;
}

// Grid of cell width 8r; any pair not in touching cells is separated by more
// than 8r, so a minimum found below 6r is the global one.
inline double hashed_min_gap(const std::vector<Point>& c, double r) {
    const double cell = 8.0 * r;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    auto key = [cell](const Point& p) {
        auto ix = static_cast<std::int64_t>(std::floor(p.x / cell));
        auto iy = static_cast<std::int64_t>(std::floor(p.y / cell));
        return (static_cast<std::uint64_t>(ix) << 32) ^
               (static_cast<std::uint64_t>(iy) & 0xffffffffull);
    };
    grid.reserve(c.size());
    for (std::uint32_t i = 0; i < c.size(); ++i) grid[key(c[i])].push_back(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                Point probe{c[i].x + dx * cell, c[i].y + dy * cell};
                auto it = grid.find(key(probe));
                if (it == grid.end()) continue;
                for (std::uint32_t j : it->second)
                    if (j > i) best = std::min(best, distance(c[i], c[j]) - 2.0 * r);
            }
    }
    if (!(best < 6.0 * r)) return brute_min_gap(c, r);
    return best;
}

}  // namespace detail

struct FractalStats {
    std::size_t count = 0;
    double radius = 0.0;
    double diameter_sum = 0.0;
    double min_gap = 0.0;   // infinity for a single disk
    double max_reach = 0.0;  // largest |center| + radius over the family
};

inline FractalStats fractal_stats(const FractalLevel& f) {
    FractalStats s;
    s.count = f.centers.size();
    s.radius = f.radius;
    s.diameter_sum = static_cast<double>(s.count) * (2.0 * f.radius);
    for (const Point& c : f.centers)
        s.max_reach = std::max(s.max_reach, std::hypot(c.x, c.y) + f.radius);
    if (s.count < 2)
        s.min_gap = std::numeric_limits<double>::infinity();
    else if (s.count <= 4096)
        s.min_gap = detail::brute_min_gap(f.centers, f.radius);
    else
        s.min_gap = detail::hashed_min_gap(f.centers, f.radius);
    return s;
}

// Closed-form separation of two disks produced by angularly adjacent maps of
// stage k inside a common parent of unit scale: the center chord minus both
// diameters still exceeds (1 - 2^{1-k}) sin(pi 2^{-k}).
struct GapReport {
    double actual = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

inline GapReport sibling_gap_check(int k, double parent_radius = 1.0) {
    if (k < 2) throw invalid_input("sibling gap needs stage at least 2");
    if (!(parent_radius > 0.0) || !std::isfinite(parent_radius))
        throw invalid_input("parent radius must be positive");
    const double q = std::ldexp(1.0, -k);
    const double s = std::sin(kPi * q);
    GapReport rep;
    rep.actual = (2.0 * (1.0 - q) * s - 2.0 * q) * parent_radius;
    rep.bound = (1.0 - 2.0 * q) * s * parent_radius;
    rep.satisfied = rep.actual >= rep.bound - kExactTol;
    return rep;
}

// Lower bound on the convex hull perimeter of a chosen set of stage-k
// sibling balls inside a unit parent, computed from polygons inscribed in the
// balls so the probe can only undershoot the true perimeter.  The weight is
// the share of length carried by the selected balls, scaled by the factor the
// hull perimeter must dominate: every selection keeps the hull longer than
// (1 - 2^{2-k}) pi times the selected diameter mass.
struct HullProbe {
    double hull_perimeter = 0.0;
    double measure_weight = 0.0;
    bool satisfied = false;
};

inline HullProbe hull_lower_probe(int k, const std::vector<int>& indices,
                                  int circle_resolution = 256) {
    if (k < 2) throw invalid_input("hull probe needs stage at least 2");
    if (indices.size() < 3) throw invalid_input("hull probe needs at least three balls");
    if (circle_resolution < 64) throw invalid_input("circle resolution below 64");
    const int fan = 1 << k;
    const double q = std::ldexp(1.0, -k);
    const double rho = 1.0 - q;
    std::vector<Point> pts;
    pts.reserve(indices.size() * static_cast<std::size_t>(circle_resolution));
    for (int j : indices) {
        if (j < 1 || j > fan) throw invalid_input("sibling index out of range");
        const double ang = 2.0 * kPi * j / fan;
        const Point c{rho * std::cos(ang), rho * std::sin(ang)};
        for (int t = 0; t < circle_resolution; ++t) {
            double a = 2.0 * kPi * t / circle_resolution;
            pts.push_back({c.x + q * std::cos(a), c.y + q * std::sin(a)});
        }
    }
    HullProbe probe;
    probe.hull_perimeter = hull_boundary_h1(convex_hull(pts));
    probe.measure_weight = (1.0 - std::ldexp(1.0, 2 - k)) * kPi *
                           static_cast<double>(indices.size()) * (2.0 * q);
    probe.satisfied = probe.hull_perimeter >= probe.measure_weight - kLengthTol;
    return probe;
}

}  // namespace innerdist
