#pragma once

#include <map>

#include "subdivision.hpp"
#include "triangulate.hpp"

namespace polypart {

// ---------------------------------------------------------------------------
// Exact partition of a simple polygon into pieces of prescribed areas.
//
// Every triangle of an ear-clipping triangulation is split by its three
// medians into six equal-area sub-triangles; the sub-triangle adjacency that
// avoids the tree of median "walls" over diagonals is 2-regular and forms a
// single Hamiltonian cycle.  Pieces are contiguous runs along that cycle,
// with the run ends cut by a segment from the fan apex to the opposite side,
// where the enclosed area is linear in the cut parameter.
// ---------------------------------------------------------------------------

struct SteinerTriangulation {
    std::vector<Point> points;       // polygon vertices, then midpoints and centroids
    std::vector<Triangle> sub;       // 6(n-2) sub-triangles
    std::vector<std::size_t> cycle;  // Hamiltonian order of sub-triangle ids
    std::size_t polygon_vertices = 0;
    std::size_t steiner_points = 0;  // midpoints + centroids = 3n - 5

    double sub_area(std::size_t s) const {
        const Triangle& t = sub[s];
        return 0.5 * cross(points[t.v[1]] - points[t.v[0]], points[t.v[2]] - points[t.v[0]]);
    }
};

inline SteinerTriangulation steiner_triangulation(const Polygon& poly) {
    Triangulation tri = triangulate(poly);
    std::size_t n = poly.size();
    std::size_t m = tri.triangles.size();

    SteinerTriangulation st;
    st.points = tri.points;
    st.polygon_vertices = n;

    // midpoint pool, shared between adjacent triangles
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
    auto midpoint_id = [&](std::size_t a, std::size_t b) {
        auto key = std::minmax(a, b);
        auto [it, fresh] = midpoint.try_emplace({key.first, key.second}, st.points.size());
        if (fresh)
            st.points.push_back(
                {0.5 * (st.points[a].x + st.points[b].x), 0.5 * (st.points[a].y + st.points[b].y)});
        return it->second;
    };

    // sub-triangle (t, j), j = 2e -> (v_e, m_e, g), j = 2e+1 -> (m_e, v_{e+1}, g)
    std::vector<std::array<std::size_t, 3>> mids(m);
    std::vector<std::size_t> centroid(m);
    for (std::size_t t = 0; t < m; ++t) {
        const Triangle& T = tri.triangles[t];
        for (int e = 0; e < 3; ++e) mids[t][e] = midpoint_id(T.v[e], T.v[(e + 1) % 3]);
        centroid[t] = st.points.size();
        Point g = {(st.points[T.v[0]].x + st.points[T.v[1]].x + st.points[T.v[2]].x) / 3.0,
                   (st.points[T.v[0]].y + st.points[T.v[1]].y + st.points[T.v[2]].y) / 3.0};
        st.points.push_back(g);
    }
    st.steiner_points = st.points.size() - n;

    st.sub.resize(6 * m);
    auto sub_id = [m](std::size_t t, int j) { return t * 6 + j; };
    for (std::size_t t = 0; t < m; ++t) {
        const Triangle& T = tri.triangles[t];
        for (int e = 0; e < 3; ++e) {
            st.sub[sub_id(t, 2 * e)] = {{T.v[e], mids[t][e], centroid[t]}};
            st.sub[sub_id(t, 2 * e + 1)] = {{mids[t][e], T.v[(e + 1) % 3], centroid[t]}};
        }
    }

    // adjacency: vertex-spoke fan edges always; midpoint-spoke fan edges only
    // over boundary edges; crossings over diagonals
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> diag; // edge -> (t, e)
    std::vector<std::array<std::size_t, 2>> adj(6 * m, {SIZE_MAX, SIZE_MAX});
    auto connect = [&](std::size_t a, std::size_t b) {
        auto add = [&](std::size_t x, std::size_t y) {
            if (adj[x][0] == SIZE_MAX)
                adj[x][0] = y;
            else
                adj[x][1] = y;
        };
        add(a, b);
        add(b, a);
    };
    for (std::size_t t = 0; t < m; ++t) {
        const Triangle& T = tri.triangles[t];
        for (int e = 0; e < 3; ++e) {
            // vertex spoke between (2e+1) and (2e+2): always present
            connect(sub_id(t, 2 * e + 1), sub_id(t, (2 * e + 2) % 6));
            std::size_t a = T.v[e], b = T.v[(e + 1) % 3];
            bool boundary = (b == (a + 1) % n) || (a == (b + 1) % n);
            if (boundary) {
                connect(sub_id(t, 2 * e), sub_id(t, 2 * e + 1)); // midpoint spoke stays
            } else {
                auto key = std::minmax(a, b);
                auto it = diag.find({key.first, key.second});
                if (it == diag.end()) {
                    diag[{key.first, key.second}] = {t, e};
                } else {
                    auto [u, f] = it->second;
                    // halves pair up across the diagonal
                    connect(sub_id(t, 2 * e), sub_id(u, 2 * f + 1));
                    connect(sub_id(t, 2 * e + 1), sub_id(u, 2 * f));
                }
            }
        }
    }

    // walk the 2-regular graph into the cycle, starting at the boundary
    // half-edge leaving the lexicographically smallest polygon vertex
    std::size_t v0 = lexicographic_min_vertex(poly);
    std::size_t start = SIZE_MAX;
    for (std::size_t t = 0; t < m && start == SIZE_MAX; ++t) {
        const Triangle& T = tri.triangles[t];
        for (int e = 0; e < 3; ++e)
            if (T.v[e] == v0 && T.v[(e + 1) % 3] == (v0 + 1) % n) {
                start = sub_id(t, 2 * e);
                break;
            }
    }
    if (start == SIZE_MAX) throw std::logic_error("boundary sub-triangle not found");

    st.cycle.reserve(6 * m);
    std::size_t prev = SIZE_MAX, cur = start;
    do {
        st.cycle.push_back(cur);
        std::size_t nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
    } while (cur != start && st.cycle.size() <= 6 * m);
    if (st.cycle.size() != 6 * m)
        throw std::logic_error("sub-triangle adjacency did not form a single cycle");
    return st;
}

struct AreaRequestError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// shared vertex of two sides of a triangle, each side given as a vertex set
inline std::size_t shared_vertex(const std::array<std::size_t, 2>& s1,
                                 const std::array<std::size_t, 2>& s2) {
    for (std::size_t a : s1)
        for (std::size_t b : s2)
            if (a == b) return a;
    throw std::logic_error("sides do not share a vertex");
}

inline std::size_t other_vertex(const std::array<std::size_t, 2>& side, std::size_t not_this) {
    return side[0] == not_this ? side[1] : side[0];
}

// side shared between consecutive cycle sub-triangles, as vertex ids
inline std::array<std::size_t, 2> shared_side(const SteinerTriangulation& st, std::size_t s1,
                                              std::size_t s2) {
    std::array<std::size_t, 2> out{SIZE_MAX, SIZE_MAX};
    int k = 0;
    for (std::size_t a : st.sub[s1].v)
        for (std::size_t b : st.sub[s2].v)
            if (st.points[a] == st.points[b] && k < 2) out[k++] = a;
    if (k != 2) throw std::logic_error("cycle neighbors do not share a side");
    return out;
}

// union of triangles (a sleeve along the cycle) traced into one polygon
inline Polygon union_of_triangles(const std::vector<std::array<Point, 3>>& tris) {
    OverlayInput in;
    for (const auto& t : tris) in.regions.push_back(Polygon{{t[0], t[1], t[2]}});
    PlanarSubdivision sub = overlay(in);
    std::vector<std::uint32_t> set;
    for (std::uint32_t f = 0; f < sub.faces.size(); ++f)
        if (!sub.faces[f].unbounded && !sub.faces[f].regions.empty()) set.push_back(f);
    Polygon u = sub.trace_union(set);
    if (!is_ccw(u)) u = reversed(u);
    return u;
}

} // namespace detail

// Validates the request: all areas positive and not vanishing relative to
// the polygon, sum within 1e-9 of the polygon area; the residual is absorbed
// into the largest-index piece.
inline std::vector<double> validate_areas(double total, std::vector<double> areas) {
    if (areas.empty()) throw AreaRequestError("no areas requested");
    double sum = 0.0;
    for (double a : areas) {
        if (!(a > 0.0)) throw AreaRequestError("areas must be positive");
        if (a < 1e-12 * total) throw AreaRequestError("area request vanishes relative to polygon");
        sum += a;
    }
    if (std::abs(sum - total) > 1e-9 * std::max(total, sum))
        throw AreaRequestError("areas must sum to the polygon area");
    double rest = total;
    for (std::size_t i = 0; i + 1 < areas.size(); ++i) rest -= areas[i];
    if (!(rest > 0.0)) throw AreaRequestError("residual of the last piece is not positive");
    areas.back() = rest;
    return areas;
}

inline std::vector<Polygon> area_partition(const Polygon& poly, std::vector<double> areas) {
    double total = polygon_area(poly);
    if (!(total > 0.0)) throw AreaRequestError("polygon must be counterclockwise with positive area");
    areas = validate_areas(total, std::move(areas));

    SteinerTriangulation st = steiner_triangulation(poly);
    std::size_t mc = st.cycle.size();

    std::vector<Polygon> pieces;
    std::vector<std::array<Point, 3>> current;

    std::size_t piece = 0;
    double need = areas[0];

    for (std::size_t k = 0; k < mc; ++k) {
        std::size_t s = st.cycle[k];
        auto entry = detail::shared_side(st, st.cycle[(k + mc - 1) % mc], s);
        auto exit = detail::shared_side(st, s, st.cycle[(k + 1) % mc]);
        std::size_t apex = detail::shared_vertex(entry, exit);
        std::size_t av = detail::other_vertex(entry, apex);
        std::size_t bv = detail::other_vertex(exit, apex);
        Point ap = st.points[apex], a = st.points[av], b = st.points[bv];
        double tri_area = st.sub_area(s);

        double consumed = 0.0; // fraction of this sub-triangle already assigned
        Point cut_from = a;
        while (piece < areas.size()) {
            double avail = tri_area * (1.0 - consumed);
            // the final piece always runs to the end of the cycle, absorbing
            // floating-point drift of the accumulated cuts
            if (piece + 1 < areas.size() && need < avail - 1e-15 * tri_area) {
                double f = std::clamp(consumed + need / tri_area, consumed, 1.0);
                Point x = lerp(a, b, f);
                current.push_back({ap, cut_from, x});
                pieces.push_back(detail::union_of_triangles(current));
                current.clear();
                ++piece;
                need = piece < areas.size() ? areas[piece] : 0.0;
                consumed = f;
                cut_from = x;
            } else {
                // finish this sub-triangle within the current piece
                current.push_back({ap, cut_from, b});
                need -= avail;
                break;
            }
        }
    }
    if (!current.empty()) {
        pieces.push_back(detail::union_of_triangles(current));
        current.clear();
    }
    if (pieces.size() != areas.size())
        throw std::logic_error("area partition produced a wrong number of pieces");
    return pieces;
}

} // namespace polypart
