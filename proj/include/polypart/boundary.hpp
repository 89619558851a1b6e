#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polypart/convex.hpp"
#include "polypart/disk.hpp"
#include "polypart/geodesic.hpp"
#include "polypart/polygon.hpp"
#include "polypart/subdivision.hpp"

namespace polypart {

// ---------------------------------------------------------------------------
// Size constraints
// ---------------------------------------------------------------------------

enum class SizeKind {
    AlignedSquare,
    RotatedSquare,
    Disk,
    StraightDiameter,
    GeodesicDiameter,
    Perimeter,
};

struct SizeConstraint {
    SizeKind kind = SizeKind::AlignedSquare;
    double bound = 1.0; // side / side / radius / diameter / diameter / perimeter
};

// ---------------------------------------------------------------------------
// Boundary intervals and pieces
// ---------------------------------------------------------------------------

struct BoundaryInterval {
    BoundaryPosition start, end;
    std::vector<Point> chain; // ccw from start to end, incl. interior corners
    bool trivial = false;     // no polygon corner strictly inside the interval
};

enum class PieceConstruction { BlowUp, ShortestPathEnclosure, TrivialSegment };

struct BoundaryPiece {
    Polygon geometry; // weakly simple, ccw (a 2-vertex chain when degenerate)
    BoundaryInterval interval;
    PieceConstruction construction = PieceConstruction::BlowUp;
    std::optional<Polygon> hull; // convex hull of the chain (blow-up kinds)
};

struct BoundaryPartition {
    std::vector<BoundaryPiece> pieces;
};

// ---------------------------------------------------------------------------
// Feasibility
// ---------------------------------------------------------------------------

// Shared per-polygon state for the greedy construction: the polygon, its
// perimeter, and a lazily built triangulation for shortest-path queries.
class BoundaryContext {
public:
    explicit BoundaryContext(const Polygon& poly) : poly_(poly), perimeter_(perimeter(poly)) {}

    const Polygon& polygon() const { return poly_; }
    double polygon_perimeter() const { return perimeter_; }

    const GeodesicContext& geodesics() const {
        if (!geo_) geo_.emplace(poly_);
        return *geo_;
    }

private:
    Polygon poly_;
    double perimeter_;
    mutable std::optional<GeodesicContext> geo_;
};

// The region enclosed by a ccw boundary chain and the shortest path between
// its endpoints.  For a closed chain the enclosure is the polygon itself.
inline Polygon enclosure_polygon(const GeodesicContext& geo, const std::vector<Point>& chain) {
    std::vector<Point> v = chain;
    if (v.size() > 1 && v.front() == v.back()) {
        v.pop_back();
        return Polygon{v};
    }
    ShortestPath sp = geo.path(chain.back(), chain.front());
    for (std::size_t i = 1; i + 1 < sp.waypoints.size(); ++i) {
        if (v.back() != sp.waypoints[i]) v.push_back(sp.waypoints[i]);
    }
    while (v.size() > 1 && v.back() == v.front()) v.pop_back();
    return Polygon{v};
}

// True iff a single piece of the given kind can cover the chain.  The chain
// must be a contiguous ccw interval of the context polygon's boundary.
inline bool feasible(const SizeConstraint& c, const std::vector<Point>& chain,
                     const BoundaryContext& ctx) {
    // tiny relative slack so closed-form maximal chords stay feasible
    double bound = c.bound * (1.0 + 1e-12);
    switch (c.kind) {
    case SizeKind::AlignedSquare: {
        BoundingBox bb = bounding_box(chain);
        return std::max(bb.width(), bb.height()) <= bound;
    }
    case SizeKind::RotatedSquare:
        return min_square_over_rotations(chain).side <= bound;
    case SizeKind::Disk:
        return min_enclosing_disk(chain).radius <= bound;
    case SizeKind::StraightDiameter:
        return straight_diameter(chain) <= bound;
    case SizeKind::GeodesicDiameter: {
        // The enclosure is geodesically convex in the ambient polygon, so its
        // diameter is the max ambient-geodesic distance over its corner pairs.
        Polygon q = enclosure_polygon(ctx.geodesics(), chain);
        double best = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                if (q[i] == q[j]) continue;
                best = std::max(best, ctx.geodesics().distance(q[i], q[j]));
                if (best > bound) return false;
            }
        return best <= bound;
    }
    case SizeKind::Perimeter: {
        double len = chain_length(chain);
        if (chain.front() != chain.back())
            len += ctx.geodesics().distance(chain.back(), chain.front());
        return len <= bound;
    }
    }
    return false;
}

inline bool feasible(const SizeConstraint& c, const std::vector<Point>& chain,
                     const Polygon& poly) {
    BoundaryContext ctx(poly);
    return feasible(c, chain, ctx);
}

// Length of the longest straight segment (in direction `dir`, unit) that a
// single piece of kind `c.kind` can cover.
inline double trivial_chord(const SizeConstraint& c, const Point& dir) {
    switch (c.kind) {
    case SizeKind::AlignedSquare:
        return c.bound / std::max(std::abs(dir.x), std::abs(dir.y));
    case SizeKind::RotatedSquare:
        return c.bound * std::sqrt(2.0); // segment on the diagonal
    case SizeKind::Disk:
        return 2.0 * c.bound;
    case SizeKind::StraightDiameter:
    case SizeKind::GeodesicDiameter:
        return c.bound;
    case SizeKind::Perimeter:
        return c.bound / 2.0; // the enclosure degenerates: both sides count
    }
    return c.bound;
}

// ---------------------------------------------------------------------------
// Maximal intervals and the greedy plan
// ---------------------------------------------------------------------------

namespace detail {

// Largest interval starting at `start`, truncated at `stop`, assuming the
// chain [start, stop] itself is infeasible and [start, first corner] is
// feasible (the trivial-segment case is handled by the caller).
inline BoundaryInterval max_interval_general(const SizeConstraint& c, const BoundaryContext& ctx,
                                             BoundaryPosition start, BoundaryPosition stop) {
    const Polygon& poly = ctx.polygon();
    std::size_t n = poly.size();
    double eps_edge = 1e-9 * ctx.polygon_perimeter();

    // candidate endpoints: corners strictly between start and stop, then stop
    std::vector<BoundaryPosition> cand;
    {
        double remaining = arc_between(poly, start, stop);
        if (remaining == 0.0) remaining = ctx.polygon_perimeter(); // full loop
        BoundaryPosition p = start;
        double walked = 0.0;
        while (true) {
            double step = (1.0 - p.t) * poly.edge(p.edge_index).length();
            walked += step;
            if (walked >= remaining) break;
            p = canonical({p.edge_index, 1.0}, n);
            cand.push_back(p);
        }
        cand.push_back(stop);
    }

    auto ok = [&](std::size_t j) { // candidate index, 0-based
        return feasible(c, boundary_chain(poly, start, cand[j]), ctx);
    };

    // exponential + binary search for the last feasible candidate; the last
    // candidate (stop) is known infeasible, the first is known feasible
    std::size_t last = cand.size() - 1; // infeasible
    std::size_t lo = 0, hi = last;      // ok(lo), !ok(hi)
    std::size_t stride = 1;
    while (lo + stride < hi && ok(lo + stride)) {
        lo += stride;
        stride *= 2;
    }
    hi = std::min(hi, lo + stride);
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (ok(mid))
            lo = mid;
        else
            hi = mid;
    }

    // phase 2: bisect along the edge between cand[lo] and cand[hi]
    BoundaryPosition at = cand[lo];
    BoundaryPosition next = cand[hi];
    double t_lo = at.t;
    double t_hi = (next.edge_index == at.edge_index && next.t > at.t) ? next.t : 1.0;
    double elen = poly.edge(at.edge_index).length();
    while ((t_hi - t_lo) * elen > eps_edge) {
        double mid = 0.5 * (t_lo + t_hi);
        if (feasible(c, boundary_chain(poly, start, {at.edge_index, mid}), ctx))
            t_lo = mid;
        else
            t_hi = mid;
    }

    BoundaryInterval out;
    out.start = start;
    out.end = canonical({at.edge_index, t_lo}, n);
    out.chain = boundary_chain(poly, start, out.end);
    out.trivial = out.chain.size() == 2; // no polygon corner strictly inside
    return out;
}

} // namespace detail

// Largest feasible interval starting at `start`, truncated at `stop`.
inline BoundaryInterval max_interval(const SizeConstraint& c, const BoundaryContext& ctx,
                                     BoundaryPosition start, BoundaryPosition stop) {
    const Polygon& poly = ctx.polygon();
    std::size_t n = poly.size();
    start = canonical(start, n);
    stop = canonical(stop, n);

    std::vector<Point> whole = boundary_chain(poly, start, stop);
    if (feasible(c, whole, ctx)) { // stop reached
        bool triv = whole.size() == 2;
        return {start, stop, std::move(whole), triv};
    }

    // first candidate: the next corner, or stop if it comes first
    Segment e = poly.edge(start.edge_index);
    double elen = e.length();
    bool stop_on_edge = stop.edge_index == start.edge_index && stop.t > start.t;
    BoundaryPosition first = stop_on_edge ? stop : canonical({start.edge_index, 1.0}, n);
    std::vector<Point> seg{boundary_point(poly, start), boundary_point(poly, first)};
    if (!feasible(c, seg, ctx)) {
        // trivial interval of closed-form length on this edge
        Point dir = (1.0 / elen) * (e.b - e.a);
        double chord = trivial_chord(c, dir);
        BoundaryInterval out;
        out.start = start;
        out.end = canonical({start.edge_index, start.t + chord / elen}, n);
        out.chain = {boundary_point(poly, start), boundary_point(poly, out.end)};
        out.trivial = true;
        return out;
    }
    return detail::max_interval_general(c, ctx, start, stop);
}

inline BoundaryInterval max_interval(const SizeConstraint& c, const Polygon& poly,
                                     BoundaryPosition start, BoundaryPosition stop) {
    BoundaryContext ctx(poly);
    return max_interval(c, ctx, start, stop);
}

// The full greedy interval plan around the boundary, starting at a0.
// Consecutive trivial intervals on one edge are laid out in closed form, so
// the count matches estimate_boundary_count exactly.
inline std::vector<BoundaryInterval> plan_intervals(const SizeConstraint& c,
                                                    const BoundaryContext& ctx,
                                                    BoundaryPosition a0) {
    const Polygon& poly = ctx.polygon();
    std::size_t n = poly.size();
    a0 = canonical(a0, n);
    std::vector<BoundaryInterval> out;
    BoundaryPosition cur = a0;

    while (true) {
        std::vector<Point> rest = boundary_chain(poly, cur, a0);
        if (feasible(c, rest, ctx)) {
            bool triv = rest.size() == 2;
            out.push_back({cur, a0, std::move(rest), triv});
            break;
        }

        Segment e = poly.edge(cur.edge_index);
        double elen = e.length();
        bool stop_on_edge = cur.edge_index == a0.edge_index && a0.t > cur.t;
        BoundaryPosition first = stop_on_edge ? a0 : canonical({cur.edge_index, 1.0}, n);
        std::vector<Point> seg{boundary_point(poly, cur), boundary_point(poly, first)};
        if (!feasible(c, seg, ctx)) {
            // batch of trivial intervals along the edge; the remainder up to
            // `first` is feasible again and handled by the next iteration
            Point dir = (1.0 / elen) * (e.b - e.a);
            double chord = trivial_chord(c, dir);
            double remaining = (first.t == 0.0 ? 1.0 : first.t) * elen - cur.t * elen;
            std::size_t m = static_cast<std::size_t>(std::ceil(remaining / chord));
            m = m > 1 ? m - 1 : 1;
            BoundaryPosition from = cur;
            for (std::size_t j = 1; j <= m; ++j) {
                BoundaryPosition to = canonical({cur.edge_index, cur.t + j * chord / elen}, n);
                out.push_back(
                    {from, to, {boundary_point(poly, from), boundary_point(poly, to)}, true});
                from = to;
            }
            cur = from;
            continue;
        }
        BoundaryInterval I = detail::max_interval_general(c, ctx, cur, a0);
        cur = I.end;
        out.push_back(std::move(I));
    }
    return out;
}

// Interval count of the greedy plan (the "x-boundary" statistic).
inline std::size_t estimate_boundary_count(const SizeConstraint& c, const Polygon& poly,
                                           BoundaryPosition a0) {
    BoundaryContext ctx(poly);
    return plan_intervals(c, ctx, a0).size();
}

// ---------------------------------------------------------------------------
// Piece construction
// ---------------------------------------------------------------------------

namespace detail {

// Interval index owning a given arc position (arc measured ccw from a0).
class IntervalLocator {
public:
    IntervalLocator(const Polygon& poly, const std::vector<BoundaryInterval>& intervals)
        : poly_(&poly), total_(perimeter(poly)) {
        base_ = arc_length(poly, intervals.front().start);
        cum_.reserve(intervals.size() + 1);
        cum_.push_back(0.0);
        double acc = 0.0;
        for (const BoundaryInterval& I : intervals) {
            acc += arc_between(poly, I.start, I.end);
            cum_.push_back(acc);
        }
        cum_.back() = total_; // absorb rounding, the plan tiles the boundary
    }

    std::size_t owner(double arc) const {
        double s = arc - base_;
        if (s < 0.0) s += total_;
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        std::size_t idx = static_cast<std::size_t>(it - cum_.begin());
        return std::min(idx == 0 ? 0 : idx - 1, cum_.size() - 2);
    }

    // arc position of a point lying on (or an ulp off) the polygon boundary;
    // subdivision vertices come from fp intersections, so match by distance
    std::optional<double> arc_of(const Point& p) const {
        std::size_t best = SIZE_MAX;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < poly_->size(); ++i) {
            Segment e = poly_->edge(i);
            double d = point_segment_distance(p, e.a, e.b);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best_d > 1e-9 * (1.0 + std::abs(p.x) + std::abs(p.y))) return std::nullopt;
        Segment e = poly_->edge(best);
        double t = e.length() > 0.0 ? std::clamp(dot(p - e.a, e.b - e.a) / (e.length() * e.length()), 0.0, 1.0) : 0.0;
        return arc_length(*poly_, {best, t});
    }

private:
    const Polygon* poly_;
    double total_, base_;
    std::vector<double> cum_;
};

inline Polygon degenerate_chain_polygon(const std::vector<Point>& chain) {
    std::vector<Point> v = chain;
    for (std::size_t i = chain.size() - 1; i-- > 1;) v.push_back(chain[i]);
    return Polygon{v};
}

} // namespace detail

// Piece for a geodesic-diameter or perimeter interval: the region enclosed by
// the interval chain and the shortest path between its endpoints.
inline BoundaryPiece build_piece_geodesic(const BoundaryInterval& interval,
                                          const BoundaryContext& ctx) {
    BoundaryPiece piece;
    piece.interval = interval;
    if (interval.trivial && interval.chain.size() == 2) {
        piece.construction = PieceConstruction::TrivialSegment;
        piece.geometry = Polygon{interval.chain};
        return piece;
    }
    piece.construction = PieceConstruction::ShortestPathEnclosure;
    piece.geometry = enclosure_polygon(ctx.geodesics(), interval.chain);
    return piece;
}

// Greedy boundary partition for all six kinds.  Blow-up kinds build a single
// overlay of P with the non-trivial interval hulls and flood-fill pieces in
// construction order; geodesic/perimeter kinds enclose each interval with a
// shortest path.
inline BoundaryPartition greedy_boundary(const SizeConstraint& c, const BoundaryContext& ctx,
                                         BoundaryPosition a0) {
    const Polygon& poly = ctx.polygon();
    std::vector<BoundaryInterval> intervals = plan_intervals(c, ctx, a0);
    BoundaryPartition part;
    part.pieces.reserve(intervals.size());

    bool geodesic_kind =
        c.kind == SizeKind::GeodesicDiameter || c.kind == SizeKind::Perimeter;
    if (geodesic_kind) {
        for (const BoundaryInterval& I : intervals)
            part.pieces.push_back(build_piece_geodesic(I, ctx));
        return part;
    }

    // hulls of the non-trivial intervals
    std::vector<std::size_t> region_of(intervals.size(), SIZE_MAX);
    OverlayInput in;
    in.regions.push_back(poly);
    std::vector<std::optional<Polygon>> hulls(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].trivial) continue;
        Polygon hull = convex_hull(intervals[i].chain);
        hulls[i] = hull;
        if (hull.size() >= 3) {
            region_of[i] = in.regions.size();
            in.regions.push_back(hull);
        }
    }

    PlanarSubdivision sub = overlay(in);

    // assign each subdivision edge on the polygon boundary to its interval
    detail::IntervalLocator locator(poly, intervals);
    std::size_t edge_count = sub.halfedges.size() / 2;
    std::vector<std::vector<std::uint32_t>> chain_edges(intervals.size());
    for (std::uint32_t e = 0; e < edge_count; ++e) {
        const auto& regions = sub.edge_regions(2 * e);
        if (!std::binary_search(regions.begin(), regions.end(), 0u)) continue;
        Point mid = lerp(sub.origin_of(2 * e), sub.head_of(2 * e), 0.5);
        if (auto arc = locator.arc_of(mid)) chain_edges[locator.owner(*arc)].push_back(e);
    }

    std::vector<std::size_t> face_piece(sub.faces.size(), SIZE_MAX);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        BoundaryPiece piece;
        piece.interval = intervals[i];
        piece.hull = hulls[i];
        if (intervals[i].trivial) {
            piece.construction = PieceConstruction::TrivialSegment;
            piece.geometry = Polygon{intervals[i].chain};
            part.pieces.push_back(std::move(piece));
            continue;
        }
        piece.construction = PieceConstruction::BlowUp;
        std::uint32_t r = region_of[i] == SIZE_MAX ? 0 : static_cast<std::uint32_t>(region_of[i]);

        // flood fill from the faces adjoining the interval, inside P and the
        // hull, never crossing dP, the hull boundary, or earlier pieces
        std::vector<std::uint32_t> owned;
        if (region_of[i] != SIZE_MAX) {
            std::vector<std::uint32_t> queue;
            auto claim = [&](std::uint32_t f) {
                if (sub.faces[f].unbounded || face_piece[f] != SIZE_MAX) return;
                if (!sub.faces[f].in_region(0) || !sub.faces[f].in_region(r)) return;
                face_piece[f] = i;
                owned.push_back(f);
                queue.push_back(f);
            };
            for (std::uint32_t e : chain_edges[i]) {
                claim(sub.halfedges[2 * e].face);
                claim(sub.halfedges[2 * e + 1].face);
            }
            while (!queue.empty()) {
                std::uint32_t f = queue.back();
                queue.pop_back();
                auto walk = [&](std::uint32_t start) {
                    std::uint32_t h = start;
                    do {
                        const auto& regs = sub.edge_regions(h);
                        bool blocked = std::binary_search(regs.begin(), regs.end(), 0u) ||
                                       std::binary_search(regs.begin(), regs.end(), r);
                        if (!blocked) {
                            std::uint32_t g = sub.halfedges[h].twin;
                            std::uint32_t nf = sub.halfedges[g].face;
                            if (face_piece[nf] == SIZE_MAX && !sub.faces[nf].unbounded &&
                                sub.faces[nf].in_region(0))
                                claim(nf);
                        }
                        h = sub.halfedges[h].next;
                    } while (h != start);
                };
                if (sub.faces[f].outer != PlanarSubdivision::kNone) walk(sub.faces[f].outer);
                for (std::uint32_t h : sub.faces[f].inner) walk(h);
            }
        }
        // dangling zero-width parts of the interval arc are left out of the
        // geometry: they carry no area and stay covered by the interval
        if (owned.empty()) {
            piece.geometry = detail::degenerate_chain_polygon(intervals[i].chain);
        } else {
            piece.geometry = sub.trace_union(owned);
            if (signed_area(piece.geometry) < 0.0) piece.geometry = reversed(piece.geometry);
        }
        part.pieces.push_back(std::move(piece));
    }
    return part;
}

inline BoundaryPartition greedy_boundary(const SizeConstraint& c, const Polygon& poly,
                                         BoundaryPosition a0) {
    BoundaryContext ctx(poly);
    return greedy_boundary(c, ctx, a0);
}

// Default greedy start: the lexicographically smallest vertex.
inline BoundaryPosition default_start(const Polygon& poly) {
    return {lexicographic_min_vertex(poly), 0.0};
}

} // namespace polypart
