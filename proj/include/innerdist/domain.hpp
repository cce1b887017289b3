#pragma once

// Polygonal domains: an optional outer polygon, polygonal holes, slit
// polylines and isolated point obstacles.  The open set is the outer interior
// (or the whole plane) minus hole closures, slit segments and points.
// Boundary features may share endpoints; a slit endpoint may rest on the
// interior of another boundary edge (comb teeth do this), but crossings and
// collinear overlaps between distinct features are rejected.

#include "core.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace innerdist {

struct PolygonalDomain {
    std::optional<SimplePolygon> outer;
    std::vector<SimplePolygon> holes;
    std::vector<Polyline> slits;
    std::vector<Point> points;

    bool bounded() const { return outer.has_value(); }
};

// All positive-length boundary segments in canonical order: outer edges, hole
// edges, then slit segments, each in input order.
inline std::vector<Segment> boundary_segments(const PolygonalDomain& d) {
    std::vector<Segment> out;
    if (d.outer)
        for (std::size_t i = 0; i < d.outer->size(); ++i) out.push_back(d.outer->edge(i));
    for (const SimplePolygon& h : d.holes)
        for (std::size_t i = 0; i < h.size(); ++i) out.push_back(h.edge(i));
    for (const Polyline& s : d.slits)
        for (std::size_t i = 1; i < s.vertices.size(); ++i)
            out.push_back(Segment(s.vertices[i - 1], s.vertices[i]));
    return out;
}

inline BoundingBox domain_bbox(const PolygonalDomain& d) {
    BoundingBox box;
    if (d.outer)
        for (const Point& p : d.outer->vertices) box.expand(p);
    for (const SimplePolygon& h : d.holes)
        for (const Point& p : h.vertices) box.expand(p);
    for (const Polyline& s : d.slits)
        for (const Point& p : s.vertices) box.expand(p);
    for (const Point& p : d.points) box.expand(p);
    return box;
}

// Classification of a point against the open set.
inline Containment contains(const PolygonalDomain& d, const Point& p) {
    if (!finite(p)) throw invalid_input("contains: non-finite point");
    if (d.outer) {
        Containment c = polygon_contains(*d.outer, p);
        if (c != Containment::inside) return c;
    }
    for (const SimplePolygon& h : d.holes) {
        Containment c = polygon_contains(h, p);
        if (c == Containment::inside) return Containment::outside;
        if (c == Containment::boundary) return Containment::boundary;
    }
    for (const Polyline& s : d.slits)
        for (std::size_t i = 1; i < s.vertices.size(); ++i)
            if (on_segment(p, s.vertices[i - 1], s.vertices[i])) return Containment::boundary;
    for (const Point& q : d.points)
        if (p == q) return Containment::boundary;
    return Containment::inside;
}

// ---------------------------------------------------------------------------
// Lattice masks.  Shared between the connectivity check here and the grid
// oracle: nodes are origin + h*(i,j); a node is valid when strictly inside
// the open set, and a lattice edge is usable only when the closed segment
// between its endpoints avoids every boundary segment entirely.

struct GridMask {
    Point origin;
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> valid;

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) +
               static_cast<std::size_t>(j);
    }
    Point node(int i, int j) const { return {origin.x + h * i, origin.y + h * j}; }
    bool in_range(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
};

// The 16 primitive offsets with Chebyshev norm <= 2 (unit king moves plus
// knight moves).  Doubled offsets add nothing: a straight two-step is usable
// exactly when both halves are.
inline constexpr int kGridOffsets[16][2] = {
    {1, 0},  {0, 1},  {-1, 0}, {0, -1}, {1, 1},  {1, -1}, {-1, 1}, {-1, -1},
    {2, 1},  {1, 2},  {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};

namespace detail {

// Spatial hash over boundary segments, used to keep per-edge blocking tests
// local.  Cells are squares of the given size; each segment is registered in
// a one-cell-thick tube around itself.
class SegmentBuckets {
  public:
    SegmentBuckets() = default;
    SegmentBuckets(const std::vector<Segment>& segs, double cell) : segs_(&segs), cell_(cell) {
        for (std::size_t s = 0; s < segs.size(); ++s) {
            const Segment& seg = segs[s];
            double len = seg.length();
            int steps = static_cast<int>(len / (0.5 * cell_)) + 1;
            for (int t = 0; t <= steps; ++t) {
                double f = static_cast<double>(t) / steps;
                Point p = seg.a + f * (seg.b - seg.a);
                long cx = cell_of(p.x), cy = cell_of(p.y);
                for (long dx = -1; dx <= 1; ++dx)
                    for (long dy = -1; dy <= 1; ++dy) add(cx + dx, cy + dy, s);
            }
        }
    }

    bool empty_near(const Point& p, const Point& q) const {
        if (!segs_) return true;
        long x0 = cell_of(std::min(p.x, q.x)), x1 = cell_of(std::max(p.x, q.x));
        long y0 = cell_of(std::min(p.y, q.y)), y1 = cell_of(std::max(p.y, q.y));
        for (long cx = x0; cx <= x1; ++cx)
            for (long cy = y0; cy <= y1; ++cy)
                if (cells_.count(key(cx, cy))) return false;
        return true;
    }

    // True iff the closed segment [p,q] avoids every registered segment.
    bool segment_free(const Point& p, const Point& q) const {
        if (!segs_) return true;
        long x0 = cell_of(std::min(p.x, q.x)), x1 = cell_of(std::max(p.x, q.x));
        long y0 = cell_of(std::min(p.y, q.y)), y1 = cell_of(std::max(p.y, q.y));
        scratch_.clear();
        for (long cx = x0; cx <= x1; ++cx)
            for (long cy = y0; cy <= y1; ++cy) {
                auto it = cells_.find(key(cx, cy));
                if (it == cells_.end()) continue;
                for (int s : it->second)
                    if (std::find(scratch_.begin(), scratch_.end(), s) == scratch_.end())
                        scratch_.push_back(s);
            }
        for (int s : scratch_) {
            const Segment& seg = (*segs_)[s];
            if (segments_touch(p, q, seg.a, seg.b)) return false;
        }
        return true;
    }

  private:
    long cell_of(double v) const { return static_cast<long>(std::floor(v / cell_)); }
    static std::uint64_t key(long cx, long cy) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy));
    }
    void add(long cx, long cy, std::size_t s) {
        auto& v = cells_[key(cx, cy)];
        if (v.empty() || v.back() != static_cast<int>(s)) v.push_back(static_cast<int>(s));
    }

    const std::vector<Segment>* segs_ = nullptr;
    double cell_ = 1.0;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
    mutable std::vector<int> scratch_;
};

// Marks nodes strictly inside the open set.  Interior parity comes from a
// per-column scanline; nodes exactly on a boundary segment or point obstacle
// are then cleared by an exact pass along each feature.
inline GridMask build_grid_mask(const PolygonalDomain& d, double h, const BoundingBox& box) {
    GridMask m;
    m.h = h;
    m.origin = box.min;
    m.nx = static_cast<int>(std::floor((box.max.x - box.min.x) / h)) + 1;
    m.ny = static_cast<int>(std::floor((box.max.y - box.min.y) / h)) + 1;
    m.valid.assign(static_cast<std::size_t>(m.nx) * m.ny, 1);

    std::vector<Segment> outer_edges, hole_edges;
    if (d.outer)
        for (std::size_t i = 0; i < d.outer->size(); ++i) outer_edges.push_back(d.outer->edge(i));
    for (const SimplePolygon& hp : d.holes)
        for (std::size_t i = 0; i < hp.size(); ++i) hole_edges.push_back(hp.edge(i));

    std::vector<double> yc;
    for (int i = 0; i < m.nx; ++i) {
        double x = m.origin.x + h * i;
        auto crossings = [&](const std::vector<Segment>& edges) {
            yc.clear();
            for (const Segment& e : edges) {
                if ((e.a.x > x) == (e.b.x > x)) continue;
                yc.push_back(e.a.y + (x - e.a.x) * (e.b.y - e.a.y) / (e.b.x - e.a.x));
            }
            std::sort(yc.begin(), yc.end());
        };
        if (!outer_edges.empty()) {
            crossings(outer_edges);
            std::size_t k = 0;
            for (int j = 0; j < m.ny; ++j) {
                double y = m.origin.y + h * j;
                while (k < yc.size() && yc[k] < y) ++k;
                if ((k & 1) == 0) m.valid[m.idx(i, j)] = 0;  // even crossings below: outside
            }
        }
        if (!hole_edges.empty()) {
            crossings(hole_edges);
            std::size_t k = 0;
            for (int j = 0; j < m.ny; ++j) {
                double y = m.origin.y + h * j;
                while (k < yc.size() && yc[k] < y) ++k;
                if (k & 1) m.valid[m.idx(i, j)] = 0;  // inside some hole
            }
        }
    }

    // Exact exclusion of nodes sitting on a boundary segment.
    std::vector<Segment> all = boundary_segments(d);
    for (const Segment& s : all) {
        double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
        bool xdom = std::abs(dx) >= std::abs(dy);
        double lo = xdom ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y);
        double hi = xdom ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y);
        double obase = xdom ? m.origin.x : m.origin.y;
        int k0 = std::max(0, static_cast<int>(std::ceil((lo - obase) / h - 1e-9)));
        int k1 = std::min((xdom ? m.nx : m.ny) - 1,
                          static_cast<int>(std::floor((hi - obase) / h + 1e-9)));
        for (int k = k0; k <= k1; ++k) {
            double c = obase + h * k;
            double t = xdom ? (c - s.a.x) / dx : (c - s.a.y) / dy;
            double other = xdom ? s.a.y + t * dy : s.a.x + t * dx;
            double o2base = xdom ? m.origin.y : m.origin.x;
            int mid = static_cast<int>(std::lround((other - o2base) / h));
            for (int n = mid - 1; n <= mid + 1; ++n) {
                int i = xdom ? k : n, j = xdom ? n : k;
                if (m.in_range(i, j) && on_segment(m.node(i, j), s.a, s.b))
                    m.valid[m.idx(i, j)] = 0;
            }
        }
    }
    for (const Point& p : d.points) {
        int i = static_cast<int>(std::lround((p.x - m.origin.x) / h));
        int j = static_cast<int>(std::lround((p.y - m.origin.y) / h));
        if (m.in_range(i, j) && m.node(i, j) == p) m.valid[m.idx(i, j)] = 0;
    }
    return m;
}

// BFS over valid nodes; true iff the valid nodes form one component under the
// 16-offset neighborhood with exactly tested edges.
inline bool grid_mask_connected(const GridMask& m, const std::vector<Segment>& segs) {
    SegmentBuckets buckets(segs, 4.0 * m.h);
    std::size_t total = 0;
    std::size_t first = m.valid.size();
    for (std::size_t n = 0; n < m.valid.size(); ++n)
        if (m.valid[n]) {
            ++total;
            if (first == m.valid.size()) first = n;
        }
    if (total == 0) return false;

    std::vector<std::uint8_t> seen(m.valid.size(), 0);
    std::vector<std::uint32_t> queue;
    queue.reserve(total);
    seen[first] = 1;
    queue.push_back(static_cast<std::uint32_t>(first));
    std::size_t visited = 0, head = 0;
    while (head < queue.size()) {
        std::uint32_t n = queue[head++];
        ++visited;
        int i = static_cast<int>(n / m.ny), j = static_cast<int>(n % m.ny);
        Point p = m.node(i, j);
        for (const auto& off : kGridOffsets) {
            int i2 = i + off[0], j2 = j + off[1];
            if (!m.in_range(i2, j2)) continue;
            std::size_t n2 = m.idx(i2, j2);
            if (!m.valid[n2] || seen[n2]) continue;
            Point q = m.node(i2, j2);
            if (!buckets.empty_near(p, q) && !buckets.segment_free(p, q)) continue;
            seen[n2] = 1;
            queue.push_back(static_cast<std::uint32_t>(n2));
        }
    }
    return visited == total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation.

namespace detail {

inline void validate_structure(const PolygonalDomain& d) {
    auto polygon_pair_disjoint = [](const SimplePolygon& p, const SimplePolygon& q,
                                    const char* what) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            Segment e = p.edge(i);
            for (std::size_t j = 0; j < q.size(); ++j) {
                Segment f = q.edge(j);
                if (segments_touch(e.a, e.b, f.a, f.b)) throw validation_error(what);
            }
        }
    };

    if (d.outer)
        for (const SimplePolygon& h : d.holes) {
            for (const Point& v : h.vertices)
                if (polygon_contains(*d.outer, v) != Containment::inside)
                    throw validation_error("hole not strictly inside outer boundary");
            polygon_pair_disjoint(h, *d.outer, "hole touches outer boundary");
        }
    for (std::size_t a = 0; a < d.holes.size(); ++a)
        for (std::size_t b = a + 1; b < d.holes.size(); ++b) {
            polygon_pair_disjoint(d.holes[a], d.holes[b], "holes touch");
            if (polygon_contains(d.holes[a], d.holes[b].vertices[0]) == Containment::inside ||
                polygon_contains(d.holes[b], d.holes[a].vertices[0]) == Containment::inside)
                throw validation_error("nested holes");
        }

    // Slit segments against every other boundary segment: no proper crossing,
    // no collinear overlap of positive length.  Point contact is legal; this
    // is how comb teeth rest on the outer boundary.
    struct Tagged {
        Segment seg;
        int feature;  // 0 outer, 1+k hole k, 1000+s slit s
        std::size_t index;
    };
    std::vector<Tagged> tagged;
    if (d.outer)
        for (std::size_t i = 0; i < d.outer->size(); ++i)
            tagged.push_back({d.outer->edge(i), 0, i});
    for (std::size_t k = 0; k < d.holes.size(); ++k)
        for (std::size_t i = 0; i < d.holes[k].size(); ++i)
            tagged.push_back({d.holes[k].edge(i), 1 + static_cast<int>(k), i});
    for (std::size_t s = 0; s < d.slits.size(); ++s)
        for (std::size_t i = 1; i < d.slits[s].vertices.size(); ++i)
            tagged.push_back({Segment(d.slits[s].vertices[i - 1], d.slits[s].vertices[i]),
                              1000 + static_cast<int>(s), i - 1});

    auto collinear_overlap = [](const Segment& s, const Segment& t) {
        if (orientation(s.a, s.b, t.a) != 0 || orientation(s.a, s.b, t.b) != 0) return false;
        bool xdom = std::abs(s.b.x - s.a.x) >= std::abs(s.b.y - s.a.y);
        auto coord = [&](const Point& p) { return xdom ? p.x : p.y; };
        double s0 = std::min(coord(s.a), coord(s.b)), s1 = std::max(coord(s.a), coord(s.b));
        double t0 = std::min(coord(t.a), coord(t.b)), t1 = std::max(coord(t.a), coord(t.b));
        return std::max(s0, t0) < std::min(s1, t1);
    };

    for (std::size_t a = 0; a < tagged.size(); ++a)
        for (std::size_t b = a + 1; b < tagged.size(); ++b) {
            const Tagged& u = tagged[a];
            const Tagged& v = tagged[b];
            bool slit_pair = u.feature >= 1000 || v.feature >= 1000;
            if (!slit_pair) continue;  // polygon pairs handled above
            if (u.feature == v.feature && v.index == u.index + 1) {
                // Consecutive slit segments share a vertex; forbid fold-backs.
                if (collinear_overlap(u.seg, v.seg))
                    throw validation_error("slit folds back on itself");
                continue;
            }
            if (proper_cross(u.seg, v.seg))
                throw validation_error("boundary segments cross");
            if (collinear_overlap(u.seg, v.seg))
                throw validation_error("boundary segments overlap");
        }

    for (const Polyline& s : d.slits)
        for (const Point& v : s.vertices) {
            if (d.outer && polygon_contains(*d.outer, v) == Containment::outside)
                throw validation_error("slit vertex outside outer boundary");
            for (const SimplePolygon& h : d.holes)
                if (polygon_contains(h, v) == Containment::inside)
                    throw validation_error("slit vertex inside hole");
        }

    for (std::size_t i = 0; i < d.points.size(); ++i) {
        const Point& p = d.points[i];
        if (!finite(p)) throw invalid_input("point obstacle non-finite");
        for (std::size_t j = i + 1; j < d.points.size(); ++j)
            if (p == d.points[j]) throw validation_error("duplicate point obstacles");
        if (d.outer && polygon_contains(*d.outer, p) != Containment::inside)
            throw validation_error("point obstacle not strictly inside outer boundary");
        for (const SimplePolygon& h : d.holes)
            if (polygon_contains(h, p) != Containment::outside)
                throw validation_error("point obstacle meets a hole");
        for (const Polyline& s : d.slits)
            for (std::size_t k = 1; k < s.vertices.size(); ++k)
                if (on_segment(p, s.vertices[k - 1], s.vertices[k]))
                    throw validation_error("point obstacle on a slit");
    }
}

}  // namespace detail

// Full validation: structural invariants plus connectivity of the open set.
// Connectivity is checked on a lattice; the base resolution subdivides the
// domain extent 256 ways and escalates to 2048 before rejecting, since a
// connected lattice proves connectivity but a disconnected one may only mean
// the corridors are narrower than a cell.
inline void validate(const PolygonalDomain& d) {
    detail::validate_structure(d);

    std::vector<Segment> segs = boundary_segments(d);
    if (segs.empty()) return;  // plane minus points is connected
    BoundingBox box = domain_bbox(d);
    double extent = std::max(box.extent(), 1e-9);
    for (int res : {256, 512, 1024, 2048}) {
        double h = extent / res;
        BoundingBox padded = box;
        double pad = 0.125 * extent;
        padded.expand({box.min.x - pad, box.min.y - pad});
        padded.expand({box.max.x + pad, box.max.y + pad});
        GridMask m = detail::build_grid_mask(d, h, padded);
        if (detail::grid_mask_connected(m, segs)) return;
    }
    throw validation_error("open set appears disconnected (lattice check up to 2048 cells)");
}

// ---------------------------------------------------------------------------
// Boundary decomposition into connected components.  Two boundary segments
// belong to the same component exactly when they are linked through shared
// endpoints; a slit endpoint resting on the interior of another edge does not
// merge components.  Isolated point obstacles are their own zero-length
// components.

struct BoundaryComponent {
    std::vector<Segment> segments;  // empty for an isolated point
    std::vector<Point> vertices;    // distinct vertices in first-appearance order
    double h1 = 0.0;

    bool is_point() const { return segments.empty(); }
};

struct BoundaryDecomposition {
    std::vector<BoundaryComponent> components;  // positive-length first, then points
    double h1_E = 0.0;      // total length of positive-length components
    double h1_total = 0.0;  // equals h1_E: points carry no length
};

inline BoundaryDecomposition decompose_boundary(const PolygonalDomain& d) {
    std::vector<Segment> segs = boundary_segments(d);

    std::map<std::pair<double, double>, int> vertex_id;
    auto vid = [&](const Point& p) {
        auto [it, added] = vertex_id.try_emplace({p.x, p.y}, static_cast<int>(vertex_id.size()));
        return it->second;
    };
    std::vector<int> sa(segs.size()), sb(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        sa[i] = vid(segs[i].a);
        sb[i] = vid(segs[i].b);
    }

    std::vector<int> parent(vertex_id.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < segs.size(); ++i) parent[find(sa[i])] = find(sb[i]);

    BoundaryDecomposition out;
    std::map<int, int> component_of_root;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        int root = find(sa[i]);
        auto [it, added] =
            component_of_root.try_emplace(root, static_cast<int>(out.components.size()));
        if (added) out.components.emplace_back();
        BoundaryComponent& c = out.components[it->second];
        c.segments.push_back(segs[i]);
        c.h1 += segs[i].length();
        for (const Point& p : {segs[i].a, segs[i].b})
            if (std::find(c.vertices.begin(), c.vertices.end(), p) == c.vertices.end())
                c.vertices.push_back(p);
    }
    for (const BoundaryComponent& c : out.components) out.h1_E += c.h1;
    out.h1_total = out.h1_E;
    for (const Point& p : d.points) {
        BoundaryComponent c;
        c.vertices.push_back(p);
        out.components.push_back(std::move(c));
    }
    return out;
}

// diameter(component) <= h1(component) + tol for connected boundary pieces;
// the diameter of a segment union is attained at vertices.
struct DiamLengthReport {
    double diameter = 0.0;
    double h1 = 0.0;
    bool satisfied = false;
};

inline DiamLengthReport connected_diam_vs_length(const BoundaryComponent& c,
                                                 double tol = kLengthTol) {
    if (c.is_point()) throw invalid_input("connected_diam_vs_length: point component");
    DiamLengthReport r;
    r.h1 = c.h1;
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < c.vertices.size(); ++j)
            r.diameter = std::max(r.diameter, distance(c.vertices[i], c.vertices[j]));
    r.satisfied = r.diameter <= r.h1 + tol;
    return r;
}

// Comb domain: the unit square with tooth pairs indexed i = 2..n.  Tooth i
// hangs a slit from the bottom edge at x = 1/(2i) up to height 1 - 1/i, and
// from the top edge at x = 1/(2i+1) down to height 1/i.  The i = 1 pair would
// degenerate (slits of full height splitting the square), so indexing starts
// at 2.
inline PolygonalDomain comb_domain(int n) {
    if (n < 2) throw invalid_input("comb_domain: n must be at least 2");
    PolygonalDomain d;
    d.outer = SimplePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    for (int i = 2; i <= n; ++i) {
        double xb = 1.0 / (2 * i);
        double xt = 1.0 / (2 * i + 1);
        double hi = 1.0 - 1.0 / i;
        d.slits.push_back(Polyline({{xb, 0.0}, {xb, hi}}));
        d.slits.push_back(Polyline({{xt, 1.0 / i}, {xt, 1.0}}));
    }
    return d;
}

}  // namespace innerdist
