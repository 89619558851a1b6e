#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polypart/area_partition.hpp"
#include "polypart/boundary.hpp"
#include "polypart/interior.hpp"

namespace polypart {

struct Piece {
    Polygon geometry;
    PieceClass cls = PieceClass::Boundary;
};

struct Partition {
    std::vector<Piece> pieces;
    std::size_t boundary_count = 0;
    std::size_t interior_count = 0;
    std::size_t ibi_count = 0;
    std::size_t fragment_count = 0;
    double ibi_total_length = 0.0;
    double delta = 0.0; // fragment bound actually used (0 for non-split kinds)
    std::vector<Polygon> subfields;
    std::size_t complete_count = 0; // counted-only complete cells
    double complete_area = 0.0;

    std::size_t total_count() const { return pieces.size() + complete_count; }
};

inline const char* piece_class_name(PieceClass c) {
    switch (c) {
    case PieceClass::Boundary:
        return "boundary";
    case PieceClass::Complete:
        return "complete";
    case PieceClass::Incomplete:
        return "incomplete";
    case PieceClass::TrivialField:
        return "trivial-field";
    case PieceClass::FragmentUnion:
        return "fragment-union";
    }
    return "?";
}

// Full pipeline for one size kind: greedy boundary pieces followed by
// grid-based interior pieces.
inline Partition partition_polygon(const Polygon& poly, const SizeConstraint& c,
                                   const InteriorParams& params = {}) {
    Partition out;
    BoundaryPartition bd = greedy_boundary(c, poly, default_start(poly));
    out.boundary_count = bd.pieces.size();
    double area_eps = 1e-12 * std::max(polygon_area(poly), 1.0);
    for (const auto& p : bd.pieces) {
        if (std::abs(signed_area(p.geometry)) <= area_eps) continue; // degenerate sliver
        Piece q;
        q.geometry = p.geometry;
        q.cls = PieceClass::Boundary;
        out.pieces.push_back(std::move(q));
    }
    InteriorResult in = interior_partition(poly, bd, c, params);
    out.ibi_count = in.ibis.size();
    out.fragment_count = in.fragments.size();
    for (const auto& ib : in.ibis) out.ibi_total_length += ib.length;
    out.delta = (params.delta > 0.0 ? params.delta : fragment_delta(c.kind)) * c.bound;
    out.subfields = std::move(in.subfields);
    out.complete_count = in.complete_count;
    out.complete_area = in.complete_area;
    out.interior_count = in.pieces.size() + in.complete_count;
    for (auto& p : in.pieces) out.pieces.push_back({std::move(p.geometry), p.cls});
    return out;
}

// Piece-count estimate without running the interior stage, where the
// analysis provides a multiplier on the boundary-piece count.  The geodesic
// and perimeter kinds have no published multiplier; for those the interior
// is constructed and counted.
inline std::size_t estimate_count(const Polygon& poly, const SizeConstraint& c,
                                  const InteriorParams& params = {}) {
    std::size_t xb = estimate_boundary_count(c, poly, default_start(poly));
    switch (c.kind) {
    case SizeKind::AlignedSquare:
        return std::size_t(std::ceil(13.0 * double(xb) / 2.0));
    case SizeKind::RotatedSquare:
        return std::size_t(std::ceil(21.0 * double(xb) / 2.0));
    case SizeKind::Disk:
    case SizeKind::StraightDiameter:
        return std::size_t(std::ceil((10.0 + M_PI / 4.0) * double(xb)));
    case SizeKind::GeodesicDiameter:
    case SizeKind::Perimeter: {
        Partition p = partition_polygon(poly, c, params);
        return xb + p.interior_count;
    }
    }
    return 0;
}

} // namespace polypart
