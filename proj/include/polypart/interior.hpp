#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polypart/boundary.hpp"
#include "polypart/geodesic.hpp"
#include "polypart/polygon.hpp"
#include "polypart/subdivision.hpp"

namespace polypart {

// ---------------------------------------------------------------------------
// Grid constants
// ---------------------------------------------------------------------------

// Cell side per unit bound: the largest square that satisfies the size
// constraint (square/disk/diameter kinds), or the optimized constant for the
// geodesic-diameter and perimeter constructions.
inline double grid_gamma(SizeKind kind) {
    switch (kind) {
    case SizeKind::AlignedSquare:
    case SizeKind::RotatedSquare:
        return 1.0;
    case SizeKind::Disk:
        return std::sqrt(2.0);
    case SizeKind::StraightDiameter:
        return 1.0 / std::sqrt(2.0);
    case SizeKind::GeodesicDiameter:
        return 0.127;
    case SizeKind::Perimeter:
        return 0.00490;
    }
    return 1.0;
}

// Max fragment arc length per unit bound (geodesic-diameter/perimeter kinds).
inline double fragment_delta(SizeKind kind) {
    switch (kind) {
    case SizeKind::GeodesicDiameter:
        return 0.1327; // largest 4-digit delta with 2*(2+sqrt(2))*gamma + delta <= 1
    case SizeKind::Perimeter:
        return 0.00243;
    default:
        return 0.0;
    }
}

struct InteriorParams {
    double gamma = 0.0; // cell side; 0 = kind default times bound
    double delta = 0.0; // fragment length; 0 = kind default times bound
    std::uint64_t seed = 0x5EED;
    // count complete cells instead of materializing them (they are all
    // gamma-sized lattice squares); keeps huge perimeter runs in memory
    bool count_complete_only = false;
};

// validity constraints on custom gamma/delta (sizes per unit bound)
inline bool interior_params_valid(SizeKind kind, double gamma, double delta) {
    if (gamma <= 0.0) return false;
    if (kind == SizeKind::GeodesicDiameter)
        return delta > 0.0 && 2.0 * (2.0 + std::sqrt(2.0)) * gamma + delta <= 1.0;
    if (kind == SizeKind::Perimeter)
        return delta > 0.0 && delta <= gamma && 24.0 * delta + 192.0 * gamma <= 1.0;
    return true;
}

// ---------------------------------------------------------------------------
// Interior boundary intervals and fragments
// ---------------------------------------------------------------------------

// Maximal part of one boundary piece's boundary that touches neither the
// polygon boundary nor any other boundary piece.
struct InteriorBoundaryInterval {
    std::size_t owner = 0;    // boundary piece index
    std::vector<Point> chain; // along the owner's ccw boundary
    double length = 0.0;
};

// Sub-chain of an interior boundary interval of arc length at most delta.
struct Fragment {
    std::size_t ibi = 0;
    std::vector<Point> chain;
    double length = 0.0;
};

namespace detail {

// Near-collinear overlap of segment (p,q) with edge (a,b): returns the
// covered parameter interval [t0,t1] along (a,b).  Chains produced by
// interpolation sit an ulp off the exact line, so this is tolerance-based.
inline bool collinear_overlap(const Point& a, const Point& b, const Point& p, const Point& q,
                              double eps, double& t0, double& t1) {
    Point u = b - a;
    double len2 = norm2(u);
    if (len2 == 0.0) return false;
    double len = std::sqrt(len2);
    if (std::abs(cross(u, p - a)) / len > eps) return false;
    if (std::abs(cross(u, q - a)) / len > eps) return false;
    double tp = dot(p - a, u) / len2;
    double tq = dot(q - a, u) / len2;
    t0 = std::max(0.0, std::min(tp, tq));
    t1 = std::min(1.0, std::max(tp, tq));
    return (t1 - t0) * len > eps;
}

} // namespace detail

// Interior boundary intervals of every boundary piece: the parts of each
// piece boundary overlapping neither dP nor any other piece, split at
// isolated contact points.
inline std::vector<InteriorBoundaryInterval> compute_ibis(const Polygon& poly,
                                                          const BoundaryPartition& bd) {
    BoundingBox pb = bounding_box(poly.vertices);
    double eps = 1e-9 * (std::max(pb.width(), pb.height()) + 1.0);

    struct Obstacle {
        Point a, b;
        std::size_t piece; // SIZE_MAX for dP
    };
    std::vector<Obstacle> obstacles;
    for (std::size_t e = 0; e < poly.size(); ++e) {
        Segment s = poly.edge(e);
        obstacles.push_back({s.a, s.b, SIZE_MAX});
    }
    for (std::size_t j = 0; j < bd.pieces.size(); ++j) {
        const Polygon& g = bd.pieces[j].geometry;
        for (std::size_t e = 0; e < g.size(); ++e) {
            Segment s = g.edge(e);
            if (s.a == s.b) continue;
            obstacles.push_back({s.a, s.b, j});
        }
    }

    std::vector<InteriorBoundaryInterval> out;
    for (std::size_t i = 0; i < bd.pieces.size(); ++i) {
        const Polygon& g = bd.pieces[i].geometry;
        if (std::abs(signed_area(g)) < eps * eps) continue; // degenerate piece
        std::size_t m = g.size();

        // per edge: covered parameter intervals and split parameters
        std::vector<std::vector<std::pair<double, double>>> covered(m);
        std::vector<std::vector<double>> splits(m);
        for (std::size_t e = 0; e < m; ++e) {
            Segment s = g.edge(e);
            if (s.a == s.b) {
                covered[e].push_back({0.0, 1.0});
                continue;
            }
            Point u = s.b - s.a;
            double len2 = norm2(u), len = std::sqrt(len2);
            for (const Obstacle& o : obstacles) {
                if (o.piece == i) continue;
                double t0, t1;
                if (detail::collinear_overlap(s.a, s.b, o.a, o.b, eps, t0, t1)) {
                    covered[e].push_back({t0, t1});
                    continue;
                }
                if (segments_cross(s.a, s.b, o.a, o.b)) {
                    Point x = crossing_point(s.a, s.b, o.a, o.b);
                    splits[e].push_back(std::clamp(dot(x - s.a, u) / len2, 0.0, 1.0));
                    continue;
                }
                for (const Point& q : {o.a, o.b}) {
                    double t = dot(q - s.a, u) / len2;
                    if (t <= 0.0 || t >= 1.0) continue;
                    if (std::abs(cross(u, q - s.a)) / len <= eps) splits[e].push_back(t);
                }
            }
        }

        // free sub-intervals per edge, in order
        std::vector<std::vector<std::pair<double, double>>> free(m);
        for (std::size_t e = 0; e < m; ++e) {
            auto& cov = covered[e];
            std::sort(cov.begin(), cov.end());
            double at = 0.0;
            for (auto [t0, t1] : cov) {
                if (t0 > at) free[e].push_back({at, t0});
                at = std::max(at, t1);
            }
            if (at < 1.0) free[e].push_back({at, 1.0});
            // apply isolated contact points as zero-width cuts
            for (double t : splits[e]) {
                for (std::size_t k = 0; k < free[e].size(); ++k) {
                    auto [t0, t1] = free[e][k];
                    if (t > t0 && t < t1) {
                        free[e][k] = {t0, t};
                        free[e].insert(free[e].begin() + k + 1, {t, t1});
                        break;
                    }
                }
            }
        }

        // cycle vertices that touch another piece or dP split chains too
        std::vector<char> vertex_contact(m, 0);
        for (std::size_t v = 0; v < m; ++v)
            for (const Obstacle& o : obstacles) {
                if (o.piece == i) continue;
                if (point_segment_distance(g[v], o.a, o.b) <= eps) {
                    vertex_contact[v] = 1;
                    break;
                }
            }

        // walk the cycle, chaining free runs across edge boundaries
        std::vector<InteriorBoundaryInterval> chains;
        auto point_at = [&](std::size_t e, double t) {
            Segment s = g.edge(e);
            return lerp(s.a, s.b, t);
        };
        InteriorBoundaryInterval cur;
        cur.owner = i;
        bool open = false;
        for (std::size_t e = 0; e < m; ++e) {
            double edge_len = g.edge(e).length();
            for (auto [t0, t1] : free[e]) {
                if ((t1 - t0) * edge_len <= eps && !(open && t0 == 0.0)) continue;
                Point a = point_at(e, t0);
                Point b = point_at(e, t1);
                if (open && t0 == 0.0 && cur.chain.back() == a && !vertex_contact[e]) {
                    if (b != cur.chain.back()) cur.chain.push_back(b);
                    continue;
                }
                if (open) {
                    chains.push_back(std::move(cur));
                    cur = InteriorBoundaryInterval{};
                    cur.owner = i;
                }
                cur.chain = {a};
                if (b != a) cur.chain.push_back(b);
                open = true;
                if (t1 < 1.0) { // run ends inside the edge
                    chains.push_back(std::move(cur));
                    cur = InteriorBoundaryInterval{};
                    cur.owner = i;
                    open = false;
                }
            }
            if (open && (free[e].empty() || free[e].back().second < 1.0)) {
                chains.push_back(std::move(cur));
                cur = InteriorBoundaryInterval{};
                cur.owner = i;
                open = false;
            }
        }
        if (open) {
            // wrap around: merge with the first chain when contiguous
            if (!vertex_contact[0] && !chains.empty() && !chains.front().chain.empty() &&
                cur.chain.back() == chains.front().chain.front()) {
                cur.chain.insert(cur.chain.end(), chains.front().chain.begin() + 1,
                                 chains.front().chain.end());
                chains.front() = std::move(cur);
            } else {
                chains.push_back(std::move(cur));
            }
        }
        for (auto& c : chains) {
            c.length = chain_length(c.chain);
            if (c.length > eps) out.push_back(std::move(c));
        }
    }
    return out;
}

// Split every interval into ceil(L/delta) fragments by traversing it and
// cutting whenever a prefix of length delta has been covered.
inline std::vector<Fragment> split_fragments(const std::vector<InteriorBoundaryInterval>& ibis,
                                             double delta) {
    std::vector<Fragment> out;
    for (std::size_t k = 0; k < ibis.size(); ++k) {
        const auto& chain = ibis[k].chain;
        Fragment cur;
        cur.ibi = k;
        cur.chain = {chain.front()};
        double used = 0.0;
        for (std::size_t e = 0; e + 1 < chain.size(); ++e) {
            Point a = chain[e], b = chain[e + 1];
            double len = dist(a, b);
            double at = 0.0;
            while (used + (len - at) >= delta) {
                double step = delta - used;
                Point cutp = lerp(a, b, (at + step) / len);
                cur.chain.push_back(cutp);
                cur.length = delta;
                out.push_back(std::move(cur));
                cur = Fragment{};
                cur.ibi = k;
                cur.chain = {cutp};
                at += step;
                used = 0.0;
            }
            if (at < len) {
                cur.chain.push_back(b);
                used += len - at;
            }
        }
        if (cur.chain.size() > 1 && used > 0.0) {
            cur.length = used;
            out.push_back(std::move(cur));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

struct GridSpec {
    double ox = 0.0, oy = 0.0; // lattice reference: lines at ox + i*cell
    double cell = 1.0;

    double line_x(long i) const { return ox + double(i) * cell; }
    double line_y(long j) const { return oy + double(j) * cell; }
    long cell_ix(double x) const { return long(std::floor((x - ox) / cell)); }
    long cell_iy(double y) const { return long(std::floor((y - oy) / cell)); }
};

namespace detail {

inline std::uint64_t cell_key(long i, long j) {
    return (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
}

// Cells visited by a segment (conservative traversal; assumes no endpoint
// lies exactly on a lattice line).
template <typename F>
inline void walk_cells(const GridSpec& grid, const Point& a, const Point& b, F&& visit) {
    double ax = (a.x - grid.ox) / grid.cell, ay = (a.y - grid.oy) / grid.cell;
    double bx = (b.x - grid.ox) / grid.cell, by = (b.y - grid.oy) / grid.cell;
    long i = long(std::floor(ax)), j = long(std::floor(ay));
    long gi = long(std::floor(bx)), gj = long(std::floor(by));
    visit(i, j);
    double dx = bx - ax, dy = by - ay;
    int si = dx > 0 ? 1 : -1, sj = dy > 0 ? 1 : -1;
    double tx = dx != 0.0 ? (double(i + (si > 0)) - ax) / dx : std::numeric_limits<double>::infinity();
    double ty = dy != 0.0 ? (double(j + (sj > 0)) - ay) / dy : std::numeric_limits<double>::infinity();
    double ddx = dx != 0.0 ? std::abs(1.0 / dx) : 0.0;
    double ddy = dy != 0.0 ? std::abs(1.0 / dy) : 0.0;
    int guard = 0;
    while ((i != gi || j != gj) && ++guard < 1 << 22) {
        if (std::abs(tx - ty) < 1e-12) { // passes near a lattice corner
            visit(i + si, j);
            visit(i, j + sj);
            i += si;
            j += sj;
            tx += ddx;
            ty += ddy;
        } else if (tx < ty) {
            i += si;
            tx += ddx;
        } else {
            j += sj;
            ty += ddy;
        }
        visit(i, j);
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Interior pieces
// ---------------------------------------------------------------------------

enum class PieceClass { Boundary, Complete, Incomplete, TrivialField, FragmentUnion };

struct InteriorPiece {
    Polygon geometry;
    PieceClass cls = PieceClass::Incomplete;
    bool edge_piece = false; // incomplete piece with a grid segment on its boundary
};

struct InteriorResult {
    std::vector<InteriorPiece> pieces;
    std::vector<InteriorBoundaryInterval> ibis;
    std::vector<Fragment> fragments;
    std::vector<Polygon> subfields; // geodesic/perimeter kinds, for inspection
    GridSpec grid;
    std::size_t complete_count = 0; // counted but not materialized pieces
    double complete_area = 0.0;     // their total area
};

namespace detail {

struct InteriorOverlayData {
    OverlayInput input;
    std::vector<std::size_t> region_piece; // overlay region index -> piece index
    std::unordered_set<std::uint64_t> active;
    long ix0, ix1, iy0, iy1; // inclusive cell index range covering P
};

// Shared stage-1 setup: polygon + solid boundary pieces + the grid border
// segments of every cell crossed by any input edge.
inline InteriorOverlayData interior_overlay_input(const Polygon& poly, const BoundaryPartition& bd,
                                                  const GridSpec& grid, double area_eps) {
    InteriorOverlayData d;
    d.input.regions.push_back(poly);
    d.region_piece.push_back(SIZE_MAX);
    for (std::size_t i = 0; i < bd.pieces.size(); ++i) {
        if (std::abs(signed_area(bd.pieces[i].geometry)) <= area_eps) continue;
        d.region_piece.push_back(i);
        d.input.regions.push_back(bd.pieces[i].geometry);
    }

    auto stamp = [&](long i, long j) { d.active.insert(cell_key(i, j)); };
    for (const Polygon& g : d.input.regions)
        for (std::size_t e = 0; e < g.size(); ++e) {
            Segment s = g.edge(e);
            if (s.a == s.b) continue;
            walk_cells(grid, s.a, s.b, stamp);
        }

    BoundingBox bb = bounding_box(poly.vertices);
    d.ix0 = grid.cell_ix(bb.min_x);
    d.ix1 = grid.cell_ix(bb.max_x);
    d.iy0 = grid.cell_iy(bb.min_y);
    d.iy1 = grid.cell_iy(bb.max_y);

    // border segments of the active cells (each undirected border once)
    for (std::uint64_t key : d.active) {
        long i = long(std::int32_t(key >> 32)), j = long(std::int32_t(key & 0xffffffffu));
        // left border if the left neighbour is inactive or has a larger key
        auto emit_v = [&](long bi) {
            d.input.polylines.push_back(
                {{grid.line_x(bi), grid.line_y(j)}, {grid.line_x(bi), grid.line_y(j + 1)}});
        };
        auto emit_h = [&](long bj) {
            d.input.polylines.push_back(
                {{grid.line_x(i), grid.line_y(bj)}, {grid.line_x(i + 1), grid.line_y(bj)}});
        };
        emit_v(i);
        emit_h(j);
        if (!d.active.count(cell_key(i + 1, j))) emit_v(i + 1);
        if (!d.active.count(cell_key(i, j + 1))) emit_h(j + 1);
    }
    return d;
}

// Complete cells: cells that no input edge crosses, strictly inside P and
// outside every boundary piece, classified by a per-row parity scan.
template <typename Emit>
inline void emit_complete_cells(const Polygon& poly, const std::vector<Polygon>& solids,
                                const GridSpec& grid, const InteriorOverlayData& d, Emit&& out) {
    for (long j = d.iy0; j <= d.iy1; ++j) {
        double y = grid.line_y(j) + 0.5 * grid.cell;
        // poly crossings (parity of inside-P) and piece crossings
        std::vector<double> xs_poly, xs_cover;
        auto collect = [&](const Polygon& g, std::vector<double>& xs) {
            for (std::size_t e = 0; e < g.size(); ++e) {
                Segment s = g.edge(e);
                if ((s.a.y > y) == (s.b.y > y)) continue;
                xs.push_back(s.a.x + (y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y));
            }
        };
        collect(poly, xs_poly);
        for (std::size_t k = 1; k < solids.size(); ++k) collect(solids[k], xs_cover);
        std::sort(xs_poly.begin(), xs_poly.end());
        std::sort(xs_cover.begin(), xs_cover.end());
        auto odd = [](const std::vector<double>& xs, double x) {
            return (std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) % 2 == 1;
        };
        for (long i = d.ix0; i <= d.ix1; ++i) {
            if (d.active.count(cell_key(i, j))) continue;
            double x = grid.line_x(i) + 0.5 * grid.cell;
            if (!odd(xs_poly, x) || odd(xs_cover, x)) continue;
            out(i, j);
        }
    }
}

// offset degeneracy test: no input vertex may sit on a lattice line (or a
// cell-center line, which the parity row scan relies on)
inline bool grid_degenerate(const GridSpec& grid, const std::vector<Polygon>& inputs) {
    auto bad = [&](double v, double o) {
        double t = (v - o) / grid.cell;
        double f = std::abs(t - std::round(t));
        double h = std::abs(t - std::floor(t) - 0.5);
        return f < 1e-9 || h < 1e-9;
    };
    for (const Polygon& g : inputs)
        for (const Point& p : g.vertices)
            if (bad(p.x, grid.ox) || bad(p.y, grid.oy)) return true;
    return false;
}

} // namespace detail

// Grid-based interior pieces for the region of P not covered by boundary
// pieces.  Square/disk/diameter kinds use the fields directly; geodesic and
// perimeter kinds split non-trivial fields into subfields grouped per
// fragment of the interior boundary intervals.
inline InteriorResult interior_partition(const Polygon& poly, const BoundaryPartition& bd,
                                         const SizeConstraint& c,
                                         const InteriorParams& params = {}) {
    InteriorResult res;
    double gamma = (params.gamma > 0.0 ? params.gamma : grid_gamma(c.kind)) * c.bound;
    double delta = (params.delta > 0.0 ? params.delta : fragment_delta(c.kind)) * c.bound;
    double area = polygon_area(poly);
    double area_eps = 1e-12 * std::max(area, 1.0);
    bool split_kind = c.kind == SizeKind::GeodesicDiameter || c.kind == SizeKind::Perimeter;

    res.ibis = compute_ibis(poly, bd);
    if (split_kind) res.fragments = split_fragments(res.ibis, delta);

    // grid offset: random in [0, gamma)^2, redrawn on degeneracy
    std::vector<Polygon> inputs{poly};
    for (const auto& p : bd.pieces) inputs.push_back(p.geometry);
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> uni(0.0, gamma);
    GridSpec grid;
    grid.cell = gamma;
    bool placed = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
        grid.ox = -uni(rng);
        grid.oy = -uni(rng);
        if (!detail::grid_degenerate(grid, inputs)) {
            placed = true;
            break;
        }
    }
    if (!placed) throw DegeneracyError("no non-degenerate grid offset found");
    res.grid = grid;

    detail::InteriorOverlayData d = detail::interior_overlay_input(poly, bd, grid, area_eps);
    detail::emit_complete_cells(poly, d.input.regions, grid, d, [&](long i, long j) {
        double a = (grid.line_x(i + 1) - grid.line_x(i)) * (grid.line_y(j + 1) - grid.line_y(j));
        if (params.count_complete_only) {
            ++res.complete_count;
            res.complete_area += a;
            return;
        }
        InteriorPiece p;
        p.cls = PieceClass::Complete;
        p.geometry = Polygon{{{grid.line_x(i), grid.line_y(j)},
                              {grid.line_x(i + 1), grid.line_y(j)},
                              {grid.line_x(i + 1), grid.line_y(j + 1)},
                              {grid.line_x(i), grid.line_y(j + 1)}}};
        res.pieces.push_back(std::move(p));
    });

    // cut geodesics (stage two) are added to the same arrangement so that
    // subfield tracing and fragment pieces share exact coordinates
    OverlayInput stage = d.input;
    std::size_t base_polylines = stage.polylines.size();
    if (split_kind)
        for (const Fragment& f : res.fragments) stage.polylines.push_back(f.chain);

    auto in_any_piece = [&](const PlanarSubdivision::Face& f) {
        for (std::uint32_t r = 1; r < d.input.regions.size(); ++r)
            if (f.in_region(r)) return true;
        return false;
    };
    // field faces live inside active cells; uncovered faces in inactive cells
    // are unions of complete cells and were already emitted by the row scan
    auto in_active_cell = [&](const PlanarSubdivision& sub, std::uint32_t f) {
        Point s = sub.face_sample(f);
        return d.active.count(detail::cell_key(grid.cell_ix(s.x), grid.cell_iy(s.y))) != 0;
    };
    auto near_lattice = [&](double v, double o) {
        double t = (v - o) / grid.cell;
        return std::abs(t - std::round(t)) < 1e-9;
    };
    auto grid_edge = [&](const Point& a, const Point& b) {
        if (near_lattice(a.x, grid.ox) && near_lattice(b.x, grid.ox) &&
            std::abs(a.x - b.x) < 0.5 * grid.cell)
            return true;
        if (near_lattice(a.y, grid.oy) && near_lattice(b.y, grid.oy) &&
            std::abs(a.y - b.y) < 0.5 * grid.cell)
            return true;
        return false;
    };

    if (!split_kind) {
        PlanarSubdivision sub;
        sub.build(d.input);
        for (std::uint32_t f = 0; f < sub.faces.size(); ++f) {
            const auto& face = sub.faces[f];
            if (face.unbounded || !face.in_region(0) || in_any_piece(face)) continue;
            if (!in_active_cell(sub, f)) continue;
            InteriorPiece p;
            p.geometry = sub.trace_union({f});
            if (signed_area(p.geometry) < 0.0) p.geometry = reversed(p.geometry);
            if (std::abs(signed_area(p.geometry)) <= area_eps) continue;
            // full cells were already emitted per row; faces here are partial
            p.cls = PieceClass::Incomplete;
            std::uint32_t h = face.outer;
            do {
                if (grid_edge(sub.origin_of(h), sub.head_of(h))) p.edge_piece = true;
                h = sub.halfedges[h].next;
            } while (h != face.outer);
            res.pieces.push_back(std::move(p));
        }
        return res;
    }

    // ---- geodesic-diameter / perimeter kinds ----
    BoundingBox pb = bounding_box(poly.vertices);
    double eps = 1e-9 * (std::max(pb.width(), pb.height()) + 1.0);

    // stage one: fields (no cuts yet), to compute the cut geodesics
    PlanarSubdivision sub1;
    {
        OverlayInput first = d.input;
        for (const Fragment& f : res.fragments) first.polylines.push_back(f.chain);
        sub1.build(first);
    }

    auto edge_on_ibi = [&](const Point& a, const Point& b) {
        for (const auto& ibi : res.ibis)
            for (std::size_t e = 0; e + 1 < ibi.chain.size(); ++e) {
                double t0, t1;
                if (detail::collinear_overlap(a, b, ibi.chain[e], ibi.chain[e + 1], eps, t0, t1))
                    return true;
            }
        return false;
    };

    // group field faces into fields: adjacent across cut-free interior edges
    // (fields are bounded by region edges and grid segments only)
    auto field_faces = [&](const PlanarSubdivision& sub) {
        std::vector<char> is_field(sub.faces.size(), 0);
        for (std::uint32_t f = 0; f < sub.faces.size(); ++f) {
            const auto& face = sub.faces[f];
            if (!face.unbounded && face.in_region(0) && !in_any_piece(face) &&
                in_active_cell(sub, f))
                is_field[f] = 1;
        }
        return is_field;
    };

    std::vector<char> is_field1 = field_faces(sub1);

    // per non-trivial field: gather boundary cycle, insert nothing (fragment
    // endpoints are already vertices via the fragment polylines), and cut
    // along geodesics from cell corners and fragment endpoints to the anchor
    std::vector<std::vector<Point>> cut_paths;
    std::vector<char> visited(sub1.faces.size(), 0);
    for (std::uint32_t f0 = 0; f0 < sub1.faces.size(); ++f0) {
        if (!is_field1[f0] || visited[f0] || sub1.faces[f0].unbounded) continue;
        visited[f0] = 1;
        if (sub1.faces[f0].outer == PlanarSubdivision::kNone) continue;
        Polygon field = sub1.trace_union({f0});
        if (signed_area(field) < 0.0) field = reversed(field);
        if (std::abs(signed_area(field)) <= area_eps) continue;

        bool trivial = true;
        for (std::size_t e = 0; e < field.size() && trivial; ++e) {
            Segment s = field.edge(e);
            if (s.a != s.b && edge_on_ibi(s.a, s.b)) trivial = false;
        }
        if (trivial) continue;

        // cut points: cell corners and fragment endpoints on the field cycle
        std::size_t anchor = lexicographic_min_vertex(field);
        std::vector<std::size_t> cut_idx;
        auto is_frag_end = [&](const Point& v) {
            for (const Fragment& fr : res.fragments)
                if (dist(v, fr.chain.front()) <= eps || dist(v, fr.chain.back()) <= eps)
                    return true;
            return false;
        };
        for (std::size_t v = 0; v < field.size(); ++v) {
            if (v == anchor) continue;
            const Point& p = field[v];
            bool corner = near_lattice(p.x, grid.ox) && near_lattice(p.y, grid.oy);
            if (corner || is_frag_end(p)) cut_idx.push_back(v);
        }
        if (cut_idx.empty()) continue;
        WeakGeodesics geo(field);
        for (std::size_t v : cut_idx) {
            std::vector<std::size_t> idx = geo.path(v, anchor);
            std::vector<Point> path;
            for (std::size_t k : idx)
                if (path.empty() || path.back() != field[k]) path.push_back(field[k]);
            if (path.size() >= 2) cut_paths.push_back(std::move(path));
        }
    }

    for (auto& p : cut_paths) stage.polylines.push_back(std::move(p));
    (void)base_polylines;

    PlanarSubdivision sub;
    sub.build(stage);
    std::vector<char> is_field = field_faces(sub);

    // cluster stage-two field faces into fields: adjacency across edges that
    // are neither region boundaries nor grid segments (i.e. cut edges)
    std::vector<std::uint32_t> cluster(sub.faces.size(), PlanarSubdivision::kNone);
    std::vector<std::vector<std::uint32_t>> clusters;
    for (std::uint32_t f0 = 0; f0 < sub.faces.size(); ++f0) {
        if (!is_field[f0] || cluster[f0] != PlanarSubdivision::kNone) continue;
        std::uint32_t id = std::uint32_t(clusters.size());
        clusters.push_back({});
        std::vector<std::uint32_t> queue{f0};
        cluster[f0] = id;
        while (!queue.empty()) {
            std::uint32_t f = queue.back();
            queue.pop_back();
            clusters[id].push_back(f);
            auto walk = [&](std::uint32_t start) {
                std::uint32_t h = start;
                do {
                    const auto& regs = sub.edge_regions(h);
                    Point a = sub.origin_of(h), b = sub.head_of(h);
                    if (regs.empty() && !grid_edge(a, b)) {
                        std::uint32_t nf = sub.halfedges[sub.halfedges[h].twin].face;
                        if (is_field[nf] && cluster[nf] == PlanarSubdivision::kNone) {
                            cluster[nf] = id;
                            queue.push_back(nf);
                        }
                    }
                    h = sub.halfedges[h].next;
                } while (h != start);
            };
            if (sub.faces[f].outer != PlanarSubdivision::kNone) walk(sub.faces[f].outer);
            for (std::uint32_t h : sub.faces[f].inner) walk(h);
        }
    }

    // which fragment (if any) runs along a subdivision edge
    auto frag_of_edge = [&](const Point& a, const Point& b) -> std::size_t {
        for (std::size_t k = 0; k < res.fragments.size(); ++k) {
            const auto& ch = res.fragments[k].chain;
            for (std::size_t e = 0; e + 1 < ch.size(); ++e) {
                double t0, t1;
                if (detail::collinear_overlap(a, b, ch[e], ch[e + 1], eps, t0, t1)) return k;
            }
        }
        return SIZE_MAX;
    };

    std::vector<std::vector<std::uint32_t>> frag_faces(res.fragments.size());
    for (std::uint32_t id = 0; id < clusters.size(); ++id) {
        const auto& members = clusters[id];
        // trivial field: single face, no boundary edge on an interior
        // boundary interval
        bool trivial = true;
        for (std::uint32_t f : members) {
            std::uint32_t h0 = sub.faces[f].outer;
            std::uint32_t h = h0;
            do {
                Point a = sub.origin_of(h), b = sub.head_of(h);
                if (a != b && edge_on_ibi(a, b)) trivial = false;
                h = sub.halfedges[h].next;
            } while (h != h0 && trivial);
            if (!trivial) break;
        }
        if (trivial) {
            Polygon g = sub.trace_union(members);
            if (signed_area(g) < 0.0) g = reversed(g);
            if (std::abs(signed_area(g)) <= area_eps) continue;
            InteriorPiece p;
            p.geometry = std::move(g);
            p.cls = PieceClass::TrivialField;
            res.pieces.push_back(std::move(p));
            continue;
        }

        // boundary cycle of the field, as an ordered halfedge walk
        std::vector<char> in_set(sub.faces.size(), 0);
        for (std::uint32_t f : members) in_set[f] = 1;
        std::vector<char> bnd(sub.halfedges.size(), 0);
        for (std::uint32_t h = 0; h < sub.halfedges.size(); ++h)
            bnd[h] = in_set[sub.halfedges[h].face] &&
                     !in_set[sub.halfedges[sub.halfedges[h].twin].face];
        auto successor = [&](std::uint32_t h) {
            std::uint32_t g = sub.halfedges[h].next;
            while (!bnd[g]) g = sub.halfedges[sub.halfedges[g].twin].next;
            return g;
        };
        std::vector<std::uint32_t> order;         // boundary halfedges, ccw
        std::vector<std::size_t> frag_at;         // fragment along each
        std::vector<char> used(sub.halfedges.size(), 0);
        for (std::uint32_t h0 = 0; h0 < sub.halfedges.size(); ++h0) {
            if (!bnd[h0] || used[h0]) continue;
            std::uint32_t h = h0;
            do {
                used[h] = 1;
                order.push_back(h);
                frag_at.push_back(frag_of_edge(sub.origin_of(h), sub.head_of(h)));
                h = successor(h);
            } while (h != h0);
        }

        // assign each subfield face to a fragment: the one it is bounded by,
        // else the next fragment counterclockwise along the field boundary
        for (std::uint32_t f : members) {
            std::size_t assigned = SIZE_MAX;
            std::size_t last_pos = SIZE_MAX;
            for (std::size_t k = 0; k < order.size(); ++k) {
                if (sub.halfedges[order[k]].face != f) continue;
                last_pos = k;
                if (frag_at[k] != SIZE_MAX) assigned = frag_at[k];
            }
            if (assigned == SIZE_MAX && last_pos != SIZE_MAX) {
                for (std::size_t s = 1; s <= order.size(); ++s) {
                    std::size_t k = (last_pos + s) % order.size();
                    if (frag_at[k] != SIZE_MAX) {
                        assigned = frag_at[k];
                        break;
                    }
                }
            }
            if (assigned == SIZE_MAX) {
                // no fragment on this field boundary cycle; keep the face as
                // its own piece rather than dropping area
                Polygon g = sub.trace_union({f});
                if (signed_area(g) < 0.0) g = reversed(g);
                if (std::abs(signed_area(g)) <= area_eps) continue;
                InteriorPiece p;
                p.geometry = std::move(g);
                p.cls = PieceClass::TrivialField;
                res.pieces.push_back(std::move(p));
                continue;
            }
            frag_faces[assigned].push_back(f);
            Polygon g = sub.trace_union({f});
            if (signed_area(g) < 0.0) g = reversed(g);
            if (std::abs(signed_area(g)) > area_eps) res.subfields.push_back(std::move(g));
        }
    }

    for (std::size_t k = 0; k < frag_faces.size(); ++k) {
        if (frag_faces[k].empty()) continue;
        Polygon g = sub.trace_union(frag_faces[k]);
        if (signed_area(g) < 0.0) g = reversed(g);
        if (std::abs(signed_area(g)) <= area_eps) continue;
        InteriorPiece p;
        p.geometry = std::move(g);
        p.cls = PieceClass::FragmentUnion;
        res.pieces.push_back(std::move(p));
    }
    return res;
}

} // namespace polypart
