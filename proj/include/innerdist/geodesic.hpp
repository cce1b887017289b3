#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "innerdist/core.hpp"
#include "innerdist/domain.hpp"
#include "innerdist/util.hpp"

namespace innerdist {

struct GeodesicPath {
    double length = 0.0;
    std::vector<Point> vertices;  // from x to y, bends only at boundary vertices
};

struct VisibilityEdge {
    int i = 0;
    int j = 0;
    double weight = 0.0;
};

struct VisibilityGraph {
    std::vector<Point> nodes;  // query points first, then boundary vertices, then obstacle points
    std::vector<VisibilityEdge> edges;
};

namespace detail {

// Angular sectors of free space around one vertex. directions[k] points from
// the vertex along an incident boundary segment; wedge k is the open sector
// swept counterclockwise from directions[k] to directions[k+1 mod m]. A vertex
// with no incident segments (interior query point, obstacle point) has a
// single all-around wedge.
struct WedgeSet {
    std::vector<Point> directions;
    std::vector<double> angles;
    std::vector<std::uint8_t> free_wedge;

    int wedge_count() const {
        return directions.empty() ? 1 : static_cast<int>(directions.size());
    }
};

inline bool parallel_same(const Point& d, const Point& g) {
    if (orientation(Point{0.0, 0.0}, d, g) != 0) return false;
    return dot(d, g) > 0.0;
}

constexpr int kSideLeft = 1;
constexpr int kSideRight = 2;
constexpr int kSideBoth = 3;

// Wedges whose closed sector contains direction g, with a mask telling which
// side of g the wedge occupies locally. At most two hits; two exactly when g
// lies along a boundary direction, in which case the counterclockwise
// neighbour sits left of g and the clockwise one right.
inline int attach_sided(const WedgeSet& w, const Point& g, int out[2], int mask[2],
                        bool free_only) {
    const int m = static_cast<int>(w.directions.size());
    if (m == 0) {
        out[0] = 0;
        mask[0] = kSideBoth;
        return 1;
    }
    for (int p = 0; p < m; ++p) {
        if (parallel_same(w.directions[p], g)) {
            int prev = (p + m - 1) % m;
            if (prev == p) {
                if (!free_only || w.free_wedge[0]) {
                    out[0] = 0;
                    mask[0] = kSideBoth;
                    return 1;
                }
                return 0;
            }
            int count = 0;
            if (!free_only || w.free_wedge[prev]) {
                out[count] = prev;
                mask[count] = kSideRight;
                ++count;
            }
            if (!free_only || w.free_wedge[p]) {
                out[count] = p;
                mask[count] = kSideLeft;
                ++count;
            }
            return count;
        }
    }
    double a = std::atan2(g.y, g.x);
    int k = m - 1;
    for (int i = 0; i + 1 < m; ++i)
        if (a >= w.angles[i] && a < w.angles[i + 1]) {
            k = i;
            break;
        }
    if (m > 1 && a < w.angles[0]) k = m - 1;
    if (!free_only || w.free_wedge[k]) {
        out[0] = k;
        mask[0] = kSideBoth;
        return 1;
    }
    return 0;
}

inline int attach_wedges(const WedgeSet& w, const Point& g, int out[2], bool free_only) {
    int mask[2];
    return attach_sided(w, g, out, mask, free_only);
}

}  // namespace detail

// Shortest-path engine over the visibility structure of a domain. The
// boundary-to-boundary part of the graph is built once; each query pair only
// adds its own rows.
class VisibilityEngine {
  public:
    explicit VisibilityEngine(const PolygonalDomain& d) : dom_(&d) {
        segs_ = boundary_segments(d);
        collect_vertices();
        build_wedges();
        build_boundary_graph();
    }

    const std::vector<Point>& vertices() const { return verts_; }

    GeodesicPath shortest(const Point& x, const Point& y) const {
        if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(y.x) ||
            !std::isfinite(y.y))
            throw invalid_input("query point has a non-finite coordinate");
        classify_query(x, "first");
        classify_query(y, "second");
        if (x == y) return GeodesicPath{0.0, {x}};

        QueryNode qx = resolve_query(x);
        QueryNode qy = resolve_query(y);
        return run_dijkstra(qx, qy);
    }

    VisibilityGraph graph(std::span<const Point> extra) const {
        VisibilityGraph g;
        std::vector<Point> all;
        std::vector<detail::WedgeSet> wsets;
        for (const Point& p : extra) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw invalid_input("graph node has a non-finite coordinate");
            classify_query(p, "extra");
            all.push_back(p);
            wsets.push_back(wedges_for_query(p));
        }
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            all.push_back(verts_[i]);
            wsets.push_back(wedges_[i]);
        }
        g.nodes = all;
        const std::size_t n = all.size();
        std::vector<std::vector<VisibilityEdge>> rows(n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (all[i] == all[j]) continue;
                EdgeCheck ec = check_edge(all[i], all[j], wsets[i], wsets[j]);
                if (ec.ok)
                    rows[i].push_back({static_cast<int>(i), static_cast<int>(j),
                                       distance(all[i], all[j])});
            }
        });
        for (auto& row : rows)
            for (const auto& e : row) g.edges.push_back(e);
        return g;
    }

  private:
    struct EdgeCheck {
        bool ok = false;
        int at_a[2] = {-1, -1};
        int mask_a[2] = {0, 0};
        int na = 0;
        int at_b[2] = {-1, -1};
        int mask_b[2] = {0, 0};
        int nb = 0;
        int pair_mask = detail::kSideBoth;

        bool pair_ok(int p, int q) const {
            return (mask_a[p] & mask_b[q] & pair_mask) != 0;
        }
    };

    struct QueryNode {
        Point p;
        int vertex_id = -1;  // existing boundary vertex, or -1 for a fresh node
        detail::WedgeSet wedges;
    };

    const PolygonalDomain* dom_;
    std::vector<Segment> segs_;
    std::vector<Point> verts_;
    std::map<std::pair<double, double>, int> vert_id_;
    std::vector<detail::WedgeSet> wedges_;
    std::vector<int> split_offset_;
    int n_split_ = 0;
    std::vector<std::vector<std::pair<int, double>>> adj_;

    void collect_vertices() {
        auto add = [&](const Point& p) {
            auto key = std::make_pair(p.x, p.y);
            if (vert_id_.emplace(key, static_cast<int>(verts_.size())).second)
                verts_.push_back(p);
        };
        if (dom_->outer)
            for (const Point& p : dom_->outer->vertices) add(p);
        for (const auto& h : dom_->holes)
            for (const Point& p : h.vertices) add(p);
        for (const auto& s : dom_->slits)
            for (const Point& p : s.vertices) add(p);
        for (const Point& p : dom_->points) add(p);
    }

    int vertex_id(const Point& p) const {
        auto it = vert_id_.find(std::make_pair(p.x, p.y));
        return it == vert_id_.end() ? -1 : it->second;
    }

    detail::WedgeSet make_wedges(const Point& v) const {
        std::vector<Point> dirs;
        auto add_dir = [&](const Point& d) {
            for (const Point& e : dirs)
                if (detail::parallel_same(e, d)) return;
            dirs.push_back(d);
        };
        for (const Segment& s : segs_) {
            if (s.a == v)
                add_dir(s.b - v);
            else if (s.b == v)
                add_dir(s.a - v);
            else if (on_segment(v, s.a, s.b)) {
                add_dir(s.a - v);
                add_dir(s.b - v);
            }
        }
        detail::WedgeSet w;
        if (dirs.empty()) {
            w.free_wedge.assign(1, 1);
            return w;
        }
        std::vector<std::pair<double, Point>> order;
        for (const Point& d : dirs) order.emplace_back(std::atan2(d.y, d.x), d);
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [ang, d] : order) {
            w.angles.push_back(ang);
            w.directions.push_back(d);
        }

        // Sampling radius: inside the disk reaching no geometry except the rays
        // through v, each sector is uniformly inside or outside the domain.
        double clear = std::numeric_limits<double>::infinity();
        double incident = 0.0;
        for (const Segment& s : segs_) {
            bool through = s.a == v || s.b == v || on_segment(v, s.a, s.b);
            if (through)
                incident = std::max(incident, std::max(distance(v, s.a), distance(v, s.b)));
            else
                clear = std::min(clear, point_segment_distance(v, s.a, s.b));
        }
        for (const Point& p : dom_->points)
            if (!(p == v)) clear = std::min(clear, distance(v, p));
        double eps = std::isfinite(clear) ? 0.45 * clear : 0.5 * std::max(incident, 1.0);

        const int m = static_cast<int>(w.directions.size());
        w.free_wedge.assign(m, 0);
        for (int k = 0; k < m; ++k) {
            double a0 = w.angles[k];
            double a1 = (m == 1) ? a0 + 2.0 * kPi : w.angles[(k + 1) % m];
            if (a1 <= a0) a1 += 2.0 * kPi;
            double mid = 0.5 * (a0 + a1);
            double r = eps;
            Containment c = Containment::boundary;
            for (int attempt = 0; attempt < 4 && c == Containment::boundary; ++attempt) {
                Point sample{v.x + r * std::cos(mid), v.y + r * std::sin(mid)};
                c = contains(*dom_, sample);
                r *= 0.375;
            }
            w.free_wedge[k] = (c != Containment::outside) ? 1 : 0;
        }
        return w;
    }

    void build_wedges() {
        wedges_.resize(verts_.size());
        parallel_for(verts_.size(), [&](std::size_t i) { wedges_[i] = make_wedges(verts_[i]); });
        split_offset_.resize(verts_.size() + 1, 0);
        for (std::size_t i = 0; i < verts_.size(); ++i)
            split_offset_[i + 1] = split_offset_[i] + wedges_[i].wedge_count();
        n_split_ = split_offset_.back();
    }

    // A straight edge is usable when it does not cross the boundary
    // transversally, threads every vertex it meets through a single free
    // wedge, and each piece between touch points stays in the closed domain.
    // Stretches that run along a boundary segment additionally pin which side
    // of the line the nearby curve walks on, so wedge attachments at the ends
    // of such a stretch must agree on a side that is open along it.
    EdgeCheck check_edge(const Point& a, const Point& b, const detail::WedgeSet& wa,
                         const detail::WedgeSet& wb) const {
        EdgeCheck ec;
        const Segment ab(a, b);
        for (const Segment& s : segs_)
            if (proper_cross(ab, s)) return ec;

        ec.na = detail::attach_sided(wa, b - a, ec.at_a, ec.mask_a, true);
        if (ec.na == 0) return ec;
        ec.nb = detail::attach_sided(wb, a - b, ec.at_b, ec.mask_b, true);
        if (ec.nb == 0) return ec;
        for (int q = 0; q < ec.nb; ++q) {
            int m = ec.mask_b[q];
            ec.mask_b[q] = ((m & detail::kSideLeft) ? detail::kSideRight : 0) |
                           ((m & detail::kSideRight) ? detail::kSideLeft : 0);
        }

        const Point d = b - a;
        const bool use_x = std::abs(d.x) >= std::abs(d.y);
        auto param = [&](const Point& p) {
            return use_x ? (p.x - a.x) / d.x : (p.y - a.y) / d.y;
        };

        std::vector<double> cuts{0.0, 1.0};
        std::vector<std::pair<double, double>> spans;
        for (const Segment& s : segs_) {
            if (orientation(a, b, s.a) != 0 || orientation(a, b, s.b) != 0) continue;
            double t0 = param(s.a), t1 = param(s.b);
            if (t0 > t1) std::swap(t0, t1);
            t0 = std::max(t0, 0.0);
            t1 = std::min(t1, 1.0);
            if (t0 < t1) {
                spans.emplace_back(t0, t1);
                cuts.push_back(t0);
                cuts.push_back(t1);
            }
        }
        for (std::size_t vi = 0; vi < verts_.size(); ++vi) {
            const Point& w = verts_[vi];
            if (w == a || w == b) continue;
            if (!on_segment(w, a, b)) continue;
            cuts.push_back(param(w));
            int in1[2], in2[2];
            int n1 = detail::attach_wedges(wedges_[vi], a - w, in1, true);
            int n2 = detail::attach_wedges(wedges_[vi], b - w, in2, true);
            bool common = false;
            for (int i = 0; i < n1 && !common; ++i)
                for (int j = 0; j < n2; ++j)
                    if (in1[i] == in2[j]) {
                        common = true;
                        break;
                    }
            if (!common) return ec;
        }

        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double tm = 0.5 * (cuts[i] + cuts[i + 1]);
            bool along = false;
            for (const auto& [t0, t1] : spans)
                if (tm >= t0 && tm <= t1) {
                    along = true;
                    break;
                }
            if (along) continue;
            Point mid{a.x + tm * d.x, a.y + tm * d.y};
            if (contains(*dom_, mid) == Containment::outside) return ec;
        }

        if (!spans.empty()) {
            std::sort(spans.begin(), spans.end());
            struct Run {
                double t0, t1;
                std::vector<std::pair<double, double>> parts;
            };
            std::vector<Run> runs;
            for (const auto& sp : spans) {
                if (!runs.empty() && sp.first <= runs.back().t1) {
                    runs.back().t1 = std::max(runs.back().t1, sp.second);
                    runs.back().parts.push_back(sp);
                } else {
                    runs.push_back({sp.first, sp.second, {sp}});
                }
            }
            const double len = std::sqrt(d.x * d.x + d.y * d.y);
            const Point nrm{-d.y / len, d.x / len};
            auto open_sides = [&](const Run& r) {
                int open = detail::kSideBoth;
                for (const auto& [p0, p1] : r.parts) {
                    double tm = 0.5 * (p0 + p1);
                    double off = 1e-7 * (p1 - p0);
                    Point base{a.x + tm * d.x, a.y + tm * d.y};
                    Point left{base.x + off * len * nrm.x, base.y + off * len * nrm.y};
                    Point right{base.x - off * len * nrm.x, base.y - off * len * nrm.y};
                    if (contains(*dom_, left) == Containment::outside)
                        open &= ~detail::kSideLeft;
                    if (contains(*dom_, right) == Containment::outside)
                        open &= ~detail::kSideRight;
                }
                return open;
            };
            std::vector<int> open(runs.size());
            for (std::size_t i = 0; i < runs.size(); ++i) {
                open[i] = open_sides(runs[i]);
                if (open[i] == 0) return ec;
            }
            auto filter = [](int* ids, int* masks, int& n, int keep) {
                int w = 0;
                for (int i = 0; i < n; ++i) {
                    int m = masks[i] & keep;
                    if (m) {
                        ids[w] = ids[i];
                        masks[w] = m;
                        ++w;
                    }
                }
                n = w;
            };
            if (runs.front().t0 == 0.0) {
                filter(ec.at_a, ec.mask_a, ec.na, open.front());
                if (ec.na == 0) return ec;
            }
            if (runs.back().t1 == 1.0) {
                filter(ec.at_b, ec.mask_b, ec.nb, open.back());
                if (ec.nb == 0) return ec;
            }
            if (runs.size() == 1 && runs.front().t0 == 0.0 && runs.front().t1 == 1.0)
                ec.pair_mask = open.front();
        }

        for (int p = 0; p < ec.na && !ec.ok; ++p)
            for (int q = 0; q < ec.nb; ++q)
                if (ec.pair_ok(p, q)) {
                    ec.ok = true;
                    break;
                }
        return ec;
    }

    void build_boundary_graph() {
        adj_.assign(n_split_, {});
        const std::size_t n = verts_.size();
        std::vector<std::vector<std::tuple<int, int, double>>> rows(n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                EdgeCheck ec = check_edge(verts_[i], verts_[j], wedges_[i], wedges_[j]);
                if (!ec.ok) continue;
                double w = distance(verts_[i], verts_[j]);
                for (int p = 0; p < ec.na; ++p)
                    for (int q = 0; q < ec.nb; ++q)
                        if (ec.pair_ok(p, q))
                            rows[i].emplace_back(split_offset_[i] + ec.at_a[p],
                                                 split_offset_[j] + ec.at_b[q], w);
            }
        });
        for (const auto& row : rows)
            for (const auto& [u, v, w] : row) {
                adj_[u].emplace_back(v, w);
                adj_[v].emplace_back(u, w);
            }
    }

    void classify_query(const Point& p, const char* which) const {
        if (contains(*dom_, p) == Containment::outside)
            throw invalid_input(std::string(which) +
                                " query point lies outside the closed domain");
    }

    detail::WedgeSet wedges_for_query(const Point& p) const {
        int vid = vertex_id(p);
        if (vid >= 0) return wedges_[vid];
        if (contains(*dom_, p) == Containment::inside) {
            detail::WedgeSet w;
            w.free_wedge.assign(1, 1);
            return w;
        }
        return make_wedges(p);
    }

    QueryNode resolve_query(const Point& p) const {
        QueryNode q;
        q.p = p;
        q.vertex_id = vertex_id(p);
        if (q.vertex_id < 0) q.wedges = wedges_for_query(p);
        return q;
    }

    GeodesicPath run_dijkstra(const QueryNode& qx, const QueryNode& qy) const {
        // Split-node ids: boundary wedge nodes first, then the query nodes.
        int total = n_split_;
        int x_base = -1, x_count = 0, y_base = -1, y_count = 0;
        if (qx.vertex_id >= 0) {
            x_base = split_offset_[qx.vertex_id];
            x_count = wedges_[qx.vertex_id].wedge_count();
        } else {
            x_base = total;
            x_count = qx.wedges.wedge_count();
            total += x_count;
        }
        if (qy.vertex_id >= 0) {
            y_base = split_offset_[qy.vertex_id];
            y_count = wedges_[qy.vertex_id].wedge_count();
        } else {
            y_base = total;
            y_count = qy.wedges.wedge_count();
            total += y_count;
        }

        std::unordered_map<int, std::vector<std::pair<int, double>>> overlay;
        auto link = [&](int u, int v, double w) {
            overlay[u].emplace_back(v, w);
            overlay[v].emplace_back(u, w);
        };
        auto attach_query = [&](const QueryNode& q, int base) {
            if (q.vertex_id >= 0) return;
            for (std::size_t vi = 0; vi < verts_.size(); ++vi) {
                if (verts_[vi] == q.p) continue;
                EdgeCheck ec = check_edge(q.p, verts_[vi], q.wedges, wedges_[vi]);
                if (!ec.ok) continue;
                double w = distance(q.p, verts_[vi]);
                for (int p = 0; p < ec.na; ++p)
                    for (int c = 0; c < ec.nb; ++c)
                        if (ec.pair_ok(p, c))
                            link(base + ec.at_a[p], split_offset_[vi] + ec.at_b[c], w);
            }
        };
        attach_query(qx, x_base);
        attach_query(qy, y_base);
        {
            const detail::WedgeSet& wx = qx.vertex_id >= 0 ? wedges_[qx.vertex_id] : qx.wedges;
            const detail::WedgeSet& wy = qy.vertex_id >= 0 ? wedges_[qy.vertex_id] : qy.wedges;
            EdgeCheck ec = check_edge(qx.p, qy.p, wx, wy);
            if (ec.ok) {
                double w = distance(qx.p, qy.p);
                for (int p = 0; p < ec.na; ++p)
                    for (int c = 0; c < ec.nb; ++c)
                        if (ec.pair_ok(p, c))
                            link(x_base + ec.at_a[p], y_base + ec.at_b[c], w);
            }
        }

        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(total, inf);
        std::vector<int> parent(total, -1);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        for (int k = 0; k < x_count; ++k) {
            dist[x_base + k] = 0.0;
            heap.emplace(0.0, x_base + k);
        }
        std::vector<std::uint8_t> done(total, 0);
        auto relax_list = [&](int u, const std::vector<std::pair<int, double>>& nbrs) {
            for (const auto& [v, w] : nbrs) {
                double nd = dist[u] + w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    parent[v] = u;
                    heap.emplace(nd, v);
                }
            }
        };
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (done[u] || du > dist[u]) continue;
            done[u] = 1;
            if (u < n_split_) relax_list(u, adj_[u]);
            auto it = overlay.find(u);
            if (it != overlay.end()) relax_list(u, it->second);
        }

        int best = -1;
        for (int k = 0; k < y_count; ++k) {
            int id = y_base + k;
            if (dist[id] < inf && (best < 0 || dist[id] < dist[best])) best = id;
        }
        if (best < 0)
            throw unreachable_error("query points lie in different components of the domain");

        std::vector<Point> chain;
        for (int u = best; u != -1; u = parent[u])
            chain.push_back(node_point(u, qx, qy, x_base, y_base));
        std::reverse(chain.begin(), chain.end());
        chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
        return GeodesicPath{dist[best], std::move(chain)};
    }

    Point node_point(int id, const QueryNode& qx, const QueryNode& qy, int x_base,
                     int y_base) const {
        if (id < n_split_) {
            std::size_t vi =
                std::upper_bound(split_offset_.begin(), split_offset_.end(), id) -
                split_offset_.begin() - 1;
            return verts_[vi];
        }
        if (qx.vertex_id < 0 && qy.vertex_id < 0)
            return id < y_base ? qx.p : qy.p;
        return qx.vertex_id < 0 ? qx.p : qy.p;
    }
};

inline GeodesicPath inner_distance_path(const PolygonalDomain& d, const Point& x,
                                        const Point& y) {
    return VisibilityEngine(d).shortest(x, y);
}

inline double inner_distance(const PolygonalDomain& d, const Point& x, const Point& y) {
    return VisibilityEngine(d).shortest(x, y).length;
}

inline VisibilityGraph build_visibility(const PolygonalDomain& d,
                                        std::span<const Point> extra) {
    return VisibilityEngine(d).graph(extra);
}

}  // namespace innerdist
