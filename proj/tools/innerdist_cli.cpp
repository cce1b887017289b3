#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "innerdist/innerdist.hpp"

using namespace innerdist;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + path);
    out << content;
}

Point parse_xy(const std::string& s) {
    const char* cur = s.c_str();
    char* end = nullptr;
    double x = std::strtod(cur, &end);
    if (end == cur || *end != ',') throw invalid_input("expected \"x,y\", got \"" + s + "\"");
    cur = end + 1;
    double y = std::strtod(cur, &end);
    if (end == cur || *end != '\0' || !std::isfinite(x) || !std::isfinite(y))
        throw invalid_input("expected \"x,y\", got \"" + s + "\"");
    return {x, y};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? s.size() : comma + 1;
        if (tok.empty()) throw invalid_input("empty entry in list \"" + s + "\"");
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw invalid_input("bad integer \"" + tok + "\" in list");
        }
    }
    if (out.empty()) throw invalid_input("empty integer list");
    return out;
}

int run_distance(const std::string& domain_file, const std::string& xs, const std::string& ys,
                 double oracle_h, const std::string& emit_path, const std::string& svg_file) {
    PolygonalDomain d = parse_domain(read_file(domain_file));
    Point x = parse_xy(xs), y = parse_xy(ys);
    VisibilityEngine engine(d);
    BoundaryDecomposition dec = decompose_boundary(d);
    GeodesicPath path = engine.shortest(x, y);
    BoundReport rep = verify_main_theorem(engine, d, dec, x, y);
    std::printf("distance %.17g\n", rep.inner);
    std::printf("euclidean %.17g\n", rep.euclidean);
    std::printf("h1_E %.17g\n", rep.h1_e);
    std::printf("q %.17g\n", rep.offset);
    std::printf("bound %.17g\n", rep.bound);
    std::printf("classic_bound %.17g\n", rep.classic_bound);
    std::printf("margin %.17g\n", rep.margin);
    if (oracle_h > 0.0) {
        double oracle = grid_oracle_value(d, x, y, oracle_h);
        std::printf("oracle %.17g\n", oracle);
        std::printf("oracle_gap %.17g\n", oracle - rep.inner);
    }
    bool ok = rep.satisfied && rep.classic_satisfied;
    std::printf("satisfied %d\n", ok ? 1 : 0);
    if (!emit_path.empty()) write_file(emit_path, serialize_path(path));
    if (!svg_file.empty()) write_file(svg_file, render_svg(d, &path));
    return ok ? 0 : 1;
}

std::vector<std::pair<Point, Point>> sample_pairs(const PolygonalDomain& d, std::size_t n,
                                                  std::uint64_t seed) {
    BoundingBox box = domain_bbox(d);
    if (box.empty()) box.expand({0.0, 0.0});
    if (!d.bounded()) {
        double pad = std::max(1.0, 0.5 * box.extent());
        box.expand({box.min.x - pad, box.min.y - pad});
        box.expand({box.max.x + pad, box.max.y + pad});
    }
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        for (int tries = 0; tries < 100000; ++tries) {
            Point p{uniform_in(rng, box.min.x, box.max.x), uniform_in(rng, box.min.y, box.max.y)};
            if (contains(d, p) == Containment::inside) return p;
        }
        throw infeasible_tolerance("rejection sampling found no interior point");
    };
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({draw(), draw()});
    return pairs;
}

int run_verify(const std::string& domain_file, const std::string& pairs_file, std::size_t random_n,
               bool random_set, std::uint64_t seed) {
    PolygonalDomain d = parse_domain(read_file(domain_file));
    if (pairs_file.empty() == !random_set)
        throw invalid_input("provide exactly one of a pairs file or --random");
    std::vector<std::pair<Point, Point>> pairs = random_set
        ? sample_pairs(d, random_n, seed)
        : parse_pairs_csv(read_file(pairs_file));
    VisibilityEngine engine(d);
    BoundaryDecomposition dec = decompose_boundary(d);
    bool all_ok = true;
    std::printf("%s\n", csv_header());
    for (const auto& [x, y] : pairs) {
        BoundReport rep = verify_main_theorem(engine, d, dec, x, y);
        std::printf("%s\n", csv_row(x, y, rep).c_str());
        all_ok = all_ok && rep.satisfied && rep.classic_satisfied;
    }
    return all_ok ? 0 : 1;
}

int run_comb(const std::string& n_list) {
    std::vector<int> teeth = parse_int_list(n_list);
    for (int n : teeth)
        if (n < 2) throw invalid_input("tooth count below 2");
    SharpnessSweep sweep = sharpness_sweep(teeth);
    std::printf("n,h1_E,distance,ratio\n");
    for (const SharpnessEntry& e : sweep.entries)
        std::printf("%d,%.17g,%.17g,%.17g\n", e.teeth, e.boundary_length, e.inner, e.ratio);
    return (sweep.nondecreasing && sweep.below_one) ? 0 : 1;
}

int run_painleve(const std::string& k_file, double clearance, double epsilon) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(k_file));
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("$: malformed JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw validation_error("$: expected a non-empty array of segments");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string where = "$[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            throw validation_error(where + ": expected [[x,y],[x,y]]");
        Point a = innerdist::detail::parse_point(j[i][0], where + "[0]");
        Point b = innerdist::detail::parse_point(j[i][1], where + "[1]");
        if (a == b) throw validation_error(where + ": zero-length segment");
        segs.emplace_back(a, b);
    }
    // Endpoint-linked connectivity; a disjoint union is not one connected set.
    std::map<std::pair<double, double>, int> comp;
    std::vector<int> parent(2 * segs.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto id_of = [&](const Point& p, int fallback) {
        return comp.try_emplace({p.x, p.y}, fallback).first->second;
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        int ia = id_of(segs[i].a, static_cast<int>(2 * i));
        int ib = id_of(segs[i].b, static_cast<int>(2 * i + 1));
        parent[find(ia)] = find(ib);
        parent[find(static_cast<int>(2 * i))] = find(ia);
        parent[find(static_cast<int>(2 * i + 1))] = find(ib);
    }
    int root = find(0);
    for (std::size_t i = 0; i < segs.size(); ++i)
        if (find(static_cast<int>(2 * i)) != root)
            throw validation_error("segments do not form a connected set");

    CoverCertificate cert = painleve_cover(make_connected_set(segs), epsilon, clearance);
    std::printf("pieces %zu\n", cert.pieces.size());
    std::printf("h1 %.17g\n", cert.h1);
    std::printf("sum_boundary %.17g\n", cert.total_boundary);
    std::printf("budget %.17g\n", cert.budget);
    std::printf("covers %d\n", cert.covers ? 1 : 0);
    bool ok = cert.within_budget && cert.covers;
    std::printf("satisfied %d\n", ok ? 1 : 0);
    return ok ? 0 : 1;
}

int run_fractal(int level, int gap_k, int probe_k, const std::string& indices) {
    int modes = (level > 0) + (gap_k > 0) + (probe_k > 0);
    if (modes != 1)
        throw invalid_input("choose exactly one of --level, --gap-check, --hull-probe");
    if (level > 0) {
        FractalLevel f = fractal_level(level);
        FractalStats s = fractal_stats(f);
        std::printf("%zu balls, radius %.17g, diameter_sum %.17g, min_gap %.17g, max_reach %.17g\n",
                    s.count, s.radius, s.diameter_sum, s.min_gap, s.max_reach);
        bool ok = s.diameter_sum == 2.0 && s.max_reach <= 1.0 && (s.count < 2 || s.min_gap > 0.0);
        return ok ? 0 : 1;
    }
    if (gap_k > 0) {
        GapReport rep = sibling_gap_check(gap_k);
        std::printf("actual %.17g bound %.17g satisfied %d\n", rep.actual, rep.bound,
                    rep.satisfied ? 1 : 0);
        return rep.satisfied ? 0 : 1;
    }
    if (indices.empty()) throw invalid_input("--hull-probe needs --indices");
    HullProbe probe = hull_lower_probe(probe_k, parse_int_list(indices));
    std::printf("hull_perimeter %.17g measure_weight %.17g satisfied %d\n", probe.hull_perimeter,
                probe.measure_weight, probe.satisfied ? 1 : 0);
    return probe.satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inner distance reports for planar polygonal domains"};
    app.require_subcommand(1);

    auto* dist = app.add_subcommand("distance", "Shortest inner path between two points");
    std::string domain_file, xs, ys, emit_path, svg_file, pairs_file, n_list = "2,4,6,8,10";
    std::string k_file, indices;
    double oracle_h = 0.0, clearance = 0.1, epsilon = 0.1;
    std::size_t random_n = 0;
    std::uint64_t seed = 0;
    int level = 0, gap_k = 0, probe_k = 0;
    dist->add_option("domain", domain_file, "domain JSON file")->required();
    dist->add_option("x", xs, "first point as \"x,y\"")->required();
    dist->add_option("y", ys, "second point as \"x,y\"")->required();
    dist->add_option("--oracle", oracle_h, "also run the grid oracle at this spacing");
    dist->add_option("--emit-path", emit_path, "write the geodesic as JSON");
    dist->add_option("--svg", svg_file, "write a figure of domain and path");

    auto* verify = app.add_subcommand("verify", "Bound report rows for point pairs");
    verify->add_option("domain", domain_file, "domain JSON file")->required();
    verify->add_option("pairs", pairs_file, "CSV file of x1,y1,x2,y2 rows");
    auto* random_opt = verify->add_option("--random", random_n, "sample this many interior pairs");
    verify->add_option("--seed", seed, "random seed");

    auto* comb = app.add_subcommand("comb", "Sharpness sweep over comb domains");
    comb->add_option("--n-list", n_list, "comma separated tooth counts");

    auto* painleve = app.add_subcommand("painleve", "Cover certificate for a connected segment set");
    painleve->add_option("set", k_file, "JSON array of segments")->required();
    painleve->add_option("--clearance", clearance, "piece diameter scale");
    painleve->add_option("--epsilon", epsilon, "length budget above 2 H1");

    auto* fractal = app.add_subcommand("fractal", "Self-similar disk family checks");
    fractal->add_option("--level", level, "enumerate disks at this level");
    fractal->add_option("--gap-check", gap_k, "sibling separation at this stage");
    fractal->add_option("--hull-probe", probe_k, "hull bound at this stage");
    fractal->add_option("--indices", indices, "comma separated sibling indices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dist->parsed())
            return run_distance(domain_file, xs, ys, oracle_h, emit_path, svg_file);
        if (verify->parsed())
            return run_verify(domain_file, pairs_file, random_n, random_opt->count() > 0, seed);
        if (comb->parsed()) return run_comb(n_list);
        if (painleve->parsed()) return run_painleve(k_file, clearance, epsilon);
        if (fractal->parsed()) return run_fractal(level, gap_k, probe_k, indices);
    } catch (const infeasible_tolerance& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
