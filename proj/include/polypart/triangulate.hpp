#pragma once

#include <array>

#include "polygon.hpp"

namespace polypart {

struct Triangle {
    // indices into the vertex pool of the owning Triangulation
    std::array<std::size_t, 3> v;
};

// Triangulation of a simple polygon without Steiner points.  Triangle i and
// its dual-graph neighbors share an edge; the dual graph is a tree.
struct Triangulation {
    std::vector<Point> points;        // == polygon vertices
    std::vector<Triangle> triangles;  // n - 2 of them
    // neighbors[t] = triangles sharing an edge with t
    std::vector<std::vector<std::size_t>> neighbors;

    Point corner(std::size_t t, int k) const { return points[triangles[t].v[k]]; }

    double triangle_area(std::size_t t) const {
        const Triangle& tr = triangles[t];
        return 0.5 * cross(points[tr.v[1]] - points[tr.v[0]], points[tr.v[2]] - points[tr.v[0]]);
    }

    // Shared (directed in t's order) edge between adjacent triangles, as
    // vertex-pool indices; nullopt if not adjacent.
    std::optional<std::pair<std::size_t, std::size_t>> shared_edge(std::size_t t,
                                                                   std::size_t u) const {
        const Triangle& a = triangles[t];
        const Triangle& b = triangles[u];
        for (int i = 0; i < 3; ++i) {
            std::size_t p = a.v[i], q = a.v[(i + 1) % 3];
            for (int j = 0; j < 3; ++j) {
                std::size_t r = b.v[j], s = b.v[(j + 1) % 3];
                if (p == s && q == r) return std::pair{p, q};
            }
        }
        return std::nullopt;
    }
};

struct NonSimplePolygonError : std::runtime_error {
    SelfIntersection intersection;
    explicit NonSimplePolygonError(const SelfIntersection& si)
        : std::runtime_error("polygon is not simple (edges " + std::to_string(si.edge_i) + " and " +
                             std::to_string(si.edge_j) + " intersect at (" +
                             std::to_string(si.where.x) + ", " + std::to_string(si.where.y) + "))"),
          intersection(si) {}
};

namespace detail {

inline bool point_in_triangle_closed(const Point& p, const Point& a, const Point& b,
                                     const Point& c) {
    int o1 = orient(a, b, p), o2 = orient(b, c, p), o3 = orient(c, a, p);
    return o1 >= 0 && o2 >= 0 && o3 >= 0;
}

} // namespace detail

// Ear clipping, O(n^2).  Requires a simple counterclockwise polygon; rejects
// non-simple input with the first self-intersection.
inline Triangulation triangulate(const Polygon& poly, bool check_simple = true) {
    if (check_simple) {
        if (auto si = find_self_intersection(poly)) throw NonSimplePolygonError(*si);
        if (!is_ccw(poly)) throw std::invalid_argument("polygon must be counterclockwise");
    }

    std::size_t n = poly.size();
    Triangulation tri;
    tri.points = poly.vertices;
    if (n < 3) return tri;

    std::vector<std::size_t> next(n), prev(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = (i + 1) % n;
        prev[i] = (i + n - 1) % n;
    }
    std::vector<bool> alive(n, true);

    // strict=false additionally rejects ears with another vertex on the
    // triangle boundary; relaxed mode is the fallback for collinear inputs.
    auto is_ear = [&](std::size_t i, bool relaxed) {
        const Point& a = tri.points[prev[i]];
        const Point& b = tri.points[i];
        const Point& c = tri.points[next[i]];
        if (orient(a, b, c) <= 0) return false;
        for (std::size_t j = next[next[i]]; j != prev[i]; j = next[j]) {
            const Point& p = tri.points[j];
            if (!detail::point_in_triangle_closed(p, a, b, c)) continue;
            if (relaxed && (point_on_segment(p, a, b) || point_on_segment(p, b, c) ||
                            point_on_segment(p, c, a)))
                continue;
            return false;
        }
        return true;
    };

    std::size_t remaining = n;
    std::size_t cur = 0;
    std::size_t guard = 0;
    bool relaxed = false;
    while (remaining > 3) {
        if (guard++ > 2 * remaining) {
            if (!relaxed) {
                relaxed = true;
                guard = 0;
            } else {
                throw std::runtime_error("ear clipping failed to make progress");
            }
        }
        if (!alive[cur]) { cur = next[cur]; continue; }
        if (is_ear(cur, relaxed)) {
            tri.triangles.push_back({prev[cur], cur, next[cur]});
            alive[cur] = false;
            next[prev[cur]] = next[cur];
            prev[next[cur]] = prev[cur];
            cur = prev[cur];
            --remaining;
            guard = 0;
        } else {
            cur = next[cur];
        }
    }
    // last triangle
    std::size_t a = cur;
    while (!alive[a]) a = next[a];
    tri.triangles.push_back({prev[a], a, next[a]});

    // dual adjacency by shared undirected edges
    std::size_t m = tri.triangles.size();
    tri.neighbors.assign(m, {});
    std::vector<std::pair<uint64_t, std::size_t>> edges;
    edges.reserve(3 * m);
    for (std::size_t t = 0; t < m; ++t) {
        for (int k = 0; k < 3; ++k) {
            std::size_t p = tri.triangles[t].v[k], q = tri.triangles[t].v[(k + 1) % 3];
            uint64_t key = (uint64_t(std::min(p, q)) << 32) | uint64_t(std::max(p, q));
            edges.emplace_back(key, t);
        }
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i].first == edges[i + 1].first) {
            tri.neighbors[edges[i].second].push_back(edges[i + 1].second);
            tri.neighbors[edges[i + 1].second].push_back(edges[i].second);
        }
    }
    return tri;
}

} // namespace polypart
