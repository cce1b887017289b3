#pragma once

// Grid upper-bound oracle for the inner distance.  Dijkstra over lattice
// nodes strictly inside the open set, 16-offset neighborhood (Chebyshev norm
// <= 2), every edge usable only when the closed segment between its endpoints
// avoids the boundary entirely.  The value is the length of a genuine path,
// so it never undershoots the inner distance, and it shrinks as h does: the
// lattice is anchored at the query point x with h-independent padding, hence
// refining h by an integer factor keeps every coarse node and edge available.
//
// This header deliberately knows nothing about the visibility graph; the two
// distance computations share only the domain model and the exact predicates.

#include "domain.hpp"

#include <queue>

namespace innerdist {

struct GridPathResult {
    double value = 0.0;
    std::vector<Point> path;  // x, lattice nodes, y
};

inline GridPathResult grid_oracle(const PolygonalDomain& d, const Point& x, const Point& y,
                                  double h) {
    if (!finite(x) || !finite(y)) throw invalid_input("grid_oracle: non-finite query point");
    if (!(h > 0.0) || !std::isfinite(h)) throw invalid_input("grid_oracle: h must be positive");
    if (contains(d, x) != Containment::inside || contains(d, y) != Containment::inside)
        throw invalid_input("grid_oracle: query point not strictly inside the domain");
    if (x == y) return {0.0, {x, y}};

    BoundingBox box = domain_bbox(d);
    box.expand(x);
    box.expand(y);
    double extent = std::max(box.extent(), 1e-3);
    double pad = 0.125 * extent;

    // Lattice anchored at x so x is always a node and dyadic refinements nest.
    int i_lo = static_cast<int>(std::ceil((box.min.x - pad - x.x) / h));
    int i_hi = static_cast<int>(std::floor((box.max.x + pad - x.x) / h));
    int j_lo = static_cast<int>(std::ceil((box.min.y - pad - x.y) / h));
    int j_hi = static_cast<int>(std::floor((box.max.y + pad - x.y) / h));
    BoundingBox lattice_box;
    lattice_box.expand({x.x + h * i_lo, x.y + h * j_lo});
    lattice_box.expand({x.x + h * i_hi, x.y + h * j_hi});
    GridMask m = detail::build_grid_mask(d, h, lattice_box);

    std::vector<Segment> segs = boundary_segments(d);
    detail::SegmentBuckets buckets(segs, 4.0 * h);

    // Coarse occupancy bitmap: an edge whose surrounding cells hold no
    // boundary segment needs no exact test.
    double cell = 4.0 * h;
    int ocx = static_cast<int>((lattice_box.max.x - lattice_box.min.x) / cell) + 3;
    int ocy = static_cast<int>((lattice_box.max.y - lattice_box.min.y) / cell) + 3;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(ocx) * ocy, 0);
    auto occ_at = [&](double px, double py) -> std::uint8_t* {
        int cx = static_cast<int>(std::floor((px - lattice_box.min.x) / cell)) + 1;
        int cy = static_cast<int>(std::floor((py - lattice_box.min.y) / cell)) + 1;
        if (cx < 0 || cx >= ocx || cy < 0 || cy >= ocy) return nullptr;
        return &occ[static_cast<std::size_t>(cx) * ocy + cy];
    };
    for (const Segment& s : segs) {
        double len = s.length();
        int steps = static_cast<int>(len / (0.5 * cell)) + 1;
        for (int t = 0; t <= steps; ++t) {
            Point p = s.a + (static_cast<double>(t) / steps) * (s.b - s.a);
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    if (std::uint8_t* c = occ_at(p.x + dx * cell, p.y + dy * cell)) *c = 1;
        }
    }
    auto edge_free = [&](const Point& p, const Point& q) {
        std::uint8_t* c1 = occ_at(p.x, p.y);
        std::uint8_t* c2 = occ_at(q.x, q.y);
        if ((!c1 || !*c1) && (!c2 || !*c2)) return true;
        return buckets.segment_free(p, q);
    };

    std::size_t n_nodes = m.valid.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n_nodes, kInf);
    std::vector<std::uint32_t> parent(n_nodes, UINT32_MAX);
    using HeapItem = std::pair<double, std::uint32_t>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;

    // Query points connect to every valid node within radius 2h reachable by
    // a boundary-free segment; x itself is a node when strictly inside.
    auto connectors = [&](const Point& q) {
        std::vector<std::pair<std::uint32_t, double>> out;
        int ci = static_cast<int>(std::lround((q.x - m.origin.x) / h));
        int cj = static_cast<int>(std::lround((q.y - m.origin.y) / h));
        for (int i = ci - 2; i <= ci + 2; ++i)
            for (int j = cj - 2; j <= cj + 2; ++j) {
                if (!m.in_range(i, j) || !m.valid[m.idx(i, j)]) continue;
                Point g = m.node(i, j);
                double w = distance(q, g);
                if (w > 2.0 * h) continue;
                if (g == q || edge_free(q, g))
                    out.push_back({static_cast<std::uint32_t>(m.idx(i, j)), w});
            }
        return out;
    };
    auto sources = connectors(x);
    auto targets = connectors(y);
    if (sources.empty() || targets.empty())
        throw unreachable_error("grid_oracle: query point has no lattice connection at this h");
    std::unordered_map<std::uint32_t, double> target_w;
    for (auto& [node, w] : targets) {
        auto it = target_w.find(node);
        if (it == target_w.end() || w < it->second) target_w[node] = w;
    }
    for (auto& [node, w] : sources) {
        if (w < dist[node]) {
            dist[node] = w;
            heap.push({w, node});
        }
    }

    double best = kInf;
    std::uint32_t best_exit = UINT32_MAX;
    int ny = m.ny;
    std::vector<double> offset_len(16);
    for (int k = 0; k < 16; ++k)
        offset_len[k] = h * std::hypot(static_cast<double>(kGridOffsets[k][0]),
                                       static_cast<double>(kGridOffsets[k][1]));
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        if (du >= best) break;
        if (auto it = target_w.find(u); it != target_w.end()) {
            double total = du + it->second;
            if (total < best) {
                best = total;
                best_exit = u;
            }
        }
        int i = static_cast<int>(u) / ny, j = static_cast<int>(u) % ny;
        Point p = m.node(i, j);
        for (int k = 0; k < 16; ++k) {
            int i2 = i + kGridOffsets[k][0], j2 = j + kGridOffsets[k][1];
            if (!m.in_range(i2, j2)) continue;
            std::uint32_t v = static_cast<std::uint32_t>(m.idx(i2, j2));
            if (!m.valid[v]) continue;
            double nd = du + offset_len[k];
            if (nd >= dist[v] || nd >= best) continue;
            if (!edge_free(p, m.node(i2, j2))) continue;
            dist[v] = nd;
            parent[v] = u;
            heap.push({nd, v});
        }
    }
    if (best == kInf) throw unreachable_error("grid_oracle: no grid path at this resolution");

    GridPathResult result;
    result.value = best;
    std::vector<Point> rev{y};
    for (std::uint32_t v = best_exit; v != UINT32_MAX; v = parent[v])
        rev.push_back(m.node(static_cast<int>(v) / ny, static_cast<int>(v) % ny));
    rev.push_back(x);
    result.path.assign(rev.rbegin(), rev.rend());
    if (result.path.size() >= 2 && result.path[0] == result.path[1])
        result.path.erase(result.path.begin() + 1);
    if (result.path.size() >= 2 && result.path[result.path.size() - 1] ==
                                       result.path[result.path.size() - 2])
        result.path.pop_back();
    return result;
}

inline double grid_oracle_value(const PolygonalDomain& d, const Point& x, const Point& y,
                                double h) {
    return grid_oracle(d, x, y, h).value;
}

}  // namespace innerdist
