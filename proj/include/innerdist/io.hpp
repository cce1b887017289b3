#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "innerdist/core.hpp"
#include "innerdist/domain.hpp"
#include "innerdist/geodesic.hpp"
#include "innerdist/verifier.hpp"

namespace innerdist {

// Shortest decimal form that round-trips a double.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Exact dyadic coordinate "p/2^q".  Anything that cannot be converted to a
// double without rounding is rejected rather than approximated.
inline double parse_dyadic(const std::string& s, const std::string& where) {
    const auto bad = [&](const char* why) {
        throw validation_error(where + ": " + why + " in dyadic string \"" + s + "\"");
    };
    const std::size_t sep = s.find("/2^");
    if (sep == std::string::npos || sep == 0 || sep + 3 >= s.size())
        bad("expected the form p/2^q");
    std::size_t i = 0;
    bool negative = s[0] == '-';
    if (negative) i = 1;
    if (i == sep) bad("missing numerator digits");
    long long p = 0;
    for (; i < sep; ++i) {
        if (s[i] < '0' || s[i] > '9') bad("non-digit numerator");
        p = p * 10 + (s[i] - '0');
        if (p >= (1ll << 53)) bad("numerator magnitude of 2^53 or more");
    }
    long long q = 0;
    for (i = sep + 3; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') bad("non-digit exponent");
        q = q * 10 + (s[i] - '0');
        if (q > 1060) bad("exponent beyond 1060");
    }
    double value = std::ldexp(static_cast<double>(p), static_cast<int>(-q));
    return negative ? -value : value;
}

namespace detail {

inline double parse_coordinate(const nlohmann::json& j, const std::string& where) {
    if (j.is_number()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) throw validation_error(where + ": non-finite number");
        return v;
    }
    if (j.is_string()) return parse_dyadic(j.get<std::string>(), where);
    throw validation_error(where + ": expected a number or dyadic string");
}

inline Point parse_point(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw validation_error(where + ": expected [x,y]");
    return {parse_coordinate(j[0], where + "[0]"), parse_coordinate(j[1], where + "[1]")};
}

inline std::vector<Point> parse_point_list(const nlohmann::json& j,
                                           const std::string& where) {
    if (!j.is_array()) throw validation_error(where + ": expected an array of [x,y]");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j.size(); ++i)
        pts.push_back(parse_point(j[i], where + "[" + std::to_string(i) + "]"));
    return pts;
}

}  // namespace detail

inline PolygonalDomain parse_domain_json(const nlohmann::json& j) {
    if (!j.is_object()) throw validation_error("$: expected a JSON object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "outer" && k != "holes" && k != "slits" && k != "points")
            throw validation_error("$." + k + ": unknown key");
    }
    PolygonalDomain d;
    const auto wrap = [](const std::string& where, auto&& fn) {
        try {
            fn();
        } catch (const error& e) {
            std::string msg = e.what();
            if (msg.rfind('$', 0) == 0) throw;  // already carries a JSON path
            throw validation_error(where + ": " + msg);
        }
    };
    if (j.contains("outer") && !j["outer"].is_null())
        wrap("$.outer", [&] { d.outer.emplace(detail::parse_point_list(j["outer"], "$.outer")); });
    if (j.contains("holes")) {
        if (!j["holes"].is_array()) throw validation_error("$.holes: expected an array");
        for (std::size_t i = 0; i < j["holes"].size(); ++i) {
            std::string where = "$.holes[" + std::to_string(i) + "]";
            wrap(where, [&] { d.holes.emplace_back(detail::parse_point_list(j["holes"][i], where)); });
        }
    }
    if (j.contains("slits")) {
        if (!j["slits"].is_array()) throw validation_error("$.slits: expected an array");
        for (std::size_t i = 0; i < j["slits"].size(); ++i) {
            std::string where = "$.slits[" + std::to_string(i) + "]";
            wrap(where, [&] { d.slits.emplace_back(detail::parse_point_list(j["slits"][i], where)); });
        }
    }
    if (j.contains("points"))
        d.points = detail::parse_point_list(j["points"], "$.points");
    try {
        validate(d);
    } catch (const error& e) {
        throw validation_error(std::string("$: ") + e.what());
    }
    return d;
}

inline PolygonalDomain parse_domain(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("$: malformed JSON: ") + e.what());
    }
    return parse_domain_json(j);
}

// Canonical form: keys sorted, numbers in %.17g, no whitespace, one trailing
// newline.  Serializing a parsed canonical document reproduces it byte for
// byte.
namespace detail {

inline void append_ring(std::string& out, const std::vector<Point>& pts) {
    out += '[';
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += fmt17(pts[i].x);
        out += ',';
        out += fmt17(pts[i].y);
        out += ']';
    }
    out += ']';
}

}  // namespace detail

inline std::string serialize_domain(const PolygonalDomain& d) {
    std::string out = "{\"holes\":[";
    for (std::size_t i = 0; i < d.holes.size(); ++i) {
        if (i) out += ',';
        detail::append_ring(out, d.holes[i].vertices);
    }
    out += "],\"outer\":";
    if (d.outer)
        detail::append_ring(out, d.outer->vertices);
    else
        out += "null";
    out += ",\"points\":";
    detail::append_ring(out, d.points);
    out += ",\"slits\":[";
    for (std::size_t i = 0; i < d.slits.size(); ++i) {
        if (i) out += ',';
        detail::append_ring(out, d.slits[i].vertices);
    }
    out += "]}\n";
    return out;
}

inline std::string serialize_path(const GeodesicPath& path) {
    std::string out = "{\"length\":";
    out += fmt17(path.length);
    out += ",\"vertices\":";
    detail::append_ring(out, path.vertices);
    out += "}\n";
    return out;
}

// Report rows: q is the straight-line term of the sharp bound, zero for a
// bounded domain.
inline const char* csv_header() {
    return "x1,y1,x2,y2,distance,euclidean,h1_E,q,bound,classic_bound,margin,satisfied";
}

inline std::string csv_row(const Point& x, const Point& y, const BoundReport& r) {
    std::string out;
    for (double v : {x.x, x.y, y.x, y.y, r.inner, r.euclidean, r.h1_e, r.offset, r.bound,
                     r.classic_bound, r.margin}) {
        out += fmt17(v);
        out += ',';
    }
    out += (r.satisfied && r.classic_satisfied) ? '1' : '0';
    return out;
}

inline std::vector<std::pair<Point, Point>> parse_pairs_csv(const std::string& text) {
    std::vector<std::pair<Point, Point>> pairs;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("x1", 0) == 0) continue;
        double v[4];
        const char* cur = line.c_str();
        for (int k = 0; k < 4; ++k) {
            char* end = nullptr;
            v[k] = std::strtod(cur, &end);
            if (end == cur || !std::isfinite(v[k]))
                throw validation_error("pairs line " + std::to_string(line_no) +
                                       ": expected x1,y1,x2,y2");
            cur = end;
            if (k < 3) {
                if (*cur != ',')
                    throw validation_error("pairs line " + std::to_string(line_no) +
                                           ": expected four comma separated numbers");
                ++cur;
            }
        }
        if (*cur != '\0')
            throw validation_error("pairs line " + std::to_string(line_no) +
                                   ": trailing characters");
        pairs.push_back({{v[0], v[1]}, {v[2], v[3]}});
    }
    return pairs;
}

// Presentation-only figure of the domain and an optional geodesic.
inline std::string render_svg(const PolygonalDomain& d, const GeodesicPath* path = nullptr) {
    BoundingBox box;
    for (const Segment& s : boundary_segments(d)) {
        box.expand(s.a);
        box.expand(s.b);
    }
    for (const Point& p : d.points) box.expand(p);
    if (path)
        for (const Point& p : path->vertices) box.expand(p);
    if (box.empty()) box.expand({0.0, 0.0});
    double w = std::max(box.max.x - box.min.x, 1e-9);
    double h = std::max(box.max.y - box.min.y, 1e-9);
    double pad = 0.05 * std::max(w, h);
    double stroke = 0.004 * std::max(w, h);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += fmt17(box.min.x - pad) + " " + fmt17(-(box.max.y + pad)) + " " +
           fmt17(w + 2.0 * pad) + " " + fmt17(h + 2.0 * pad) + "\">\n";
    const auto ring_attr = [](const std::vector<Point>& pts, bool close) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s += i ? " " : "";
            s += fmt17(pts[i].x) + "," + fmt17(-pts[i].y);
        }
        if (close && !pts.empty()) s += " " + fmt17(pts[0].x) + "," + fmt17(-pts[0].y);
        return s;
    };
    if (d.outer)
        out += "<polygon points=\"" + ring_attr(d.outer->vertices, false) +
               "\" fill=\"#eceff4\" stroke=\"#2e3440\" stroke-width=\"" + fmt17(stroke) + "\"/>\n";
    for (const SimplePolygon& hole : d.holes)
        out += "<polygon points=\"" + ring_attr(hole.vertices, false) +
               "\" fill=\"#ffffff\" stroke=\"#2e3440\" stroke-width=\"" + fmt17(stroke) + "\"/>\n";
    for (const Polyline& slit : d.slits)
        out += "<polyline points=\"" + ring_attr(slit.vertices, false) +
               "\" fill=\"none\" stroke=\"#2e3440\" stroke-width=\"" + fmt17(stroke) + "\"/>\n";
    for (const Point& p : d.points)
        out += "<circle cx=\"" + fmt17(p.x) + "\" cy=\"" + fmt17(-p.y) + "\" r=\"" +
               fmt17(1.5 * stroke) + "\" fill=\"#2e3440\"/>\n";
    if (path && !path->vertices.empty())
        out += "<polyline points=\"" + ring_attr(path->vertices, false) +
               "\" fill=\"none\" stroke=\"#bf616a\" stroke-width=\"" + fmt17(1.5 * stroke) +
               "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace innerdist
