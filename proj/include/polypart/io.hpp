#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "polypart/boundary.hpp"
#include "polypart/partition.hpp"
#include "polypart/verify.hpp"

namespace polypart {

using json = nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const char* size_kind_name(SizeKind k) {
    switch (k) {
    case SizeKind::AlignedSquare:
        return "aligned-square";
    case SizeKind::RotatedSquare:
        return "rotated-square";
    case SizeKind::Disk:
        return "disk";
    case SizeKind::StraightDiameter:
        return "straight-diameter";
    case SizeKind::GeodesicDiameter:
        return "geodesic-diameter";
    case SizeKind::Perimeter:
        return "perimeter";
    }
    return "?";
}

inline bool parse_size_kind(const std::string& s, SizeKind& out) {
    for (SizeKind k : {SizeKind::AlignedSquare, SizeKind::RotatedSquare, SizeKind::Disk,
                       SizeKind::StraightDiameter, SizeKind::GeodesicDiameter,
                       SizeKind::Perimeter})
        if (s == size_kind_name(k)) {
            out = k;
            return true;
        }
    return false;
}

// decimal with 17 significant digits: round-trips any double exactly
inline json coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return json::parse(buf);
}

inline json points_json(const std::vector<Point>& pts) {
    json a = json::array();
    for (const Point& p : pts) a.push_back(json::array({coord(p.x), coord(p.y)}));
    return a;
}

inline std::vector<Point> points_from_json(const json& a) {
    if (!a.is_array()) throw IoError("expected an array of [x, y] pairs");
    std::vector<Point> pts;
    for (const auto& e : a) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw IoError("expected an array of [x, y] pairs");
        double x = e[0].get<double>(), y = e[1].get<double>();
        if (!std::isfinite(x) || !std::isfinite(y)) throw IoError("non-finite coordinate");
        pts.push_back({x, y});
    }
    return pts;
}

inline Polygon read_polygon(const json& doc) {
    if (!doc.is_object() || !doc.contains("polygon")) throw IoError("missing \"polygon\" field");
    std::vector<Point> pts = points_from_json(doc["polygon"]);
    if (pts.size() < 3) throw IoError("polygon needs at least 3 vertices");
    return Polygon{std::move(pts)};
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
    return doc;
}

inline json report_json(const VerificationReport& rep) {
    json r;
    r["covered_area_residual"] = rep.covered_area_residual;
    r["max_pairwise_overlap"] = rep.max_pairwise_overlap;
    r["outside_area"] = rep.outside_area;
    r["lower_bound"] = rep.lower_bound;
    r["partition_pass"] = rep.partition_pass;
    r["sizes_pass"] = rep.sizes_pass;
    r["pass"] = rep.pass;
    json counts;
    for (int c = 0; c < 5; ++c)
        counts[piece_class_name(PieceClass(c))] = rep.class_counts[c];
    r["class_counts"] = counts;
    json checks = json::array();
    for (const auto& b : rep.bound_checks)
        checks.push_back({{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"pass", b.pass}});
    r["bound_checks"] = checks;
    return r;
}

inline json partition_json(const Polygon& poly, const std::string& kind,
                           const std::vector<Piece>& pieces, const VerificationReport& rep) {
    json out;
    out["kind"] = kind;
    out["polygon"] = points_json(poly.vertices);
    json arr = json::array();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        json p;
        p["class"] = piece_class_name(pieces[i].cls);
        p["vertices"] = points_json(pieces[i].geometry.vertices);
        if (i < rep.sizes.size()) p["measured_size"] = rep.sizes[i].measured;
        arr.push_back(std::move(p));
    }
    out["pieces"] = std::move(arr);
    out["report"] = report_json(rep);
    return out;
}

inline std::vector<Piece> pieces_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("pieces")) throw IoError("missing \"pieces\" field");
    std::vector<Piece> out;
    for (const auto& e : doc["pieces"]) {
        Piece p;
        std::string cls = e.value("class", "boundary");
        for (int c = 0; c < 5; ++c)
            if (cls == piece_class_name(PieceClass(c))) p.cls = PieceClass(c);
        p.geometry = Polygon{points_from_json(e.at("vertices"))};
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace polypart
