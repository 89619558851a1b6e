#pragma once

#include <sstream>
#include <string>

#include "polypart/partition.hpp"

namespace polypart {

// Deterministic fill colors per piece class.
inline const char* piece_class_color(PieceClass c) {
    switch (c) {
    case PieceClass::Boundary:
        return "#4c72b0";
    case PieceClass::Complete:
        return "#55a868";
    case PieceClass::Incomplete:
        return "#c44e52";
    case PieceClass::TrivialField:
        return "#8172b2";
    case PieceClass::FragmentUnion:
        return "#ccb974";
    }
    return "#999999";
}

// One filled path per piece, polygon outline on top; y axis flipped so that
// world "up" renders up.  Default scale: 1 world unit = 100 px.
inline std::string render_svg(const Polygon& poly, const std::vector<Piece>& pieces,
                              double scale = 100.0) {
    BoundingBox bb = bounding_box(poly.vertices);
    double pad = 0.02 * std::max(bb.width(), bb.height()) + 0.01;
    double w = (bb.width() + 2 * pad) * scale;
    double h = (bb.height() + 2 * pad) * scale;
    auto tx = [&](double x) { return (x - bb.min_x + pad) * scale; };
    auto ty = [&](double y) { return h - (y - bb.min_y + pad) * scale; };

    std::ostringstream os;
    os.precision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    auto path = [&](const std::vector<Point>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i == 0 ? 'M' : 'L') << tx(v[i].x) << ' ' << ty(v[i].y);
        os << 'Z';
    };
    for (const Piece& p : pieces) {
        os << "<path d=\"";
        path(p.geometry.vertices);
        os << "\" fill=\"" << piece_class_color(p.cls)
           << "\" fill-opacity=\"0.85\" stroke=\"#333333\" stroke-width=\"0.6\"/>\n";
    }
    os << "<path d=\"";
    path(poly.vertices);
    os << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace polypart
