#pragma once

#include "triangulate.hpp"

namespace polypart {

struct ShortestPath {
    std::vector<Point> waypoints; // from source to target, both included
    double length = 0.0;
};

namespace detail {

inline bool point_in_triangle_of(const Triangulation& tri, std::size_t t, const Point& p) {
    return point_in_triangle_closed(p, tri.corner(t, 0), tri.corner(t, 1), tri.corner(t, 2));
}

inline std::size_t locate_triangle(const Triangulation& tri, const Point& p) {
    for (std::size_t t = 0; t < tri.triangles.size(); ++t)
        if (point_in_triangle_of(tri, t, p)) return t;
    // a point computed by edge interpolation can land an ulp outside every
    // triangle under exact predicates; fall back to the nearest triangle
    std::size_t best = SIZE_MAX;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < tri.triangles.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            double d = point_segment_distance(p, tri.corner(t, k), tri.corner(t, (k + 1) % 3));
            if (d < best_d) {
                best_d = d;
                best = t;
            }
        }
    double scale = 1.0 + std::abs(p.x) + std::abs(p.y);
    if (best_d <= 1e-9 * scale) return best;
    throw std::invalid_argument("point outside the polygon");
}

// dual-tree path between two triangles (BFS; the dual graph is a tree)
inline std::vector<std::size_t> dual_path(const Triangulation& tri, std::size_t from,
                                          std::size_t to) {
    if (from == to) return {from};
    std::vector<std::size_t> parent(tri.triangles.size(), SIZE_MAX);
    std::vector<std::size_t> queue{from};
    parent[from] = from;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t t = queue[qi];
        if (t == to) break;
        for (std::size_t u : tri.neighbors[t])
            if (parent[u] == SIZE_MAX) {
                parent[u] = t;
                queue.push_back(u);
            }
    }
    std::vector<std::size_t> path;
    for (std::size_t t = to; t != from; t = parent[t]) path.push_back(t);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

// Funnel algorithm over the triangulation sleeve between s and t.  Requires
// the triangulation of a simple polygon; s and t must lie in its closure.
inline ShortestPath shortest_path(const Triangulation& tri, const Point& s, const Point& t) {
    ShortestPath result;
    if (s == t) {
        result.waypoints = {s};
        return result;
    }
    std::size_t ts = detail::locate_triangle(tri, s);
    std::size_t tt = detail::locate_triangle(tri, t);
    std::vector<std::size_t> sleeve = detail::dual_path(tri, ts, tt);

    // portals (left, right) as seen along the direction of travel
    struct Portal {
        Point left, right;
    };
    std::vector<Portal> portals;
    portals.push_back({s, s});
    for (std::size_t k = 0; k + 1 < sleeve.size(); ++k) {
        auto e = tri.shared_edge(sleeve[k], sleeve[k + 1]);
        // directed edge (p, q) in ccw order of the current triangle: the next
        // triangle lies to its right, so q is left of the travel direction
        portals.push_back({tri.points[e->second], tri.points[e->first]});
    }
    portals.push_back({t, t});

    auto& path = result.waypoints;
    path.push_back(s);
    Point apex = s, left = s, right = s;
    std::size_t apex_i = 0, left_i = 0, right_i = 0;
    for (std::size_t i = 1; i < portals.size(); ++i) {
        const Point& pl = portals[i].left;
        const Point& pr = portals[i].right;
        // tighten the right side
        if (orient(apex, right, pr) >= 0) {
            if (apex == right || orient(apex, left, pr) < 0) {
                right = pr;
                right_i = i;
            } else {
                // right sweeps over left: left becomes the new apex
                if (path.back() != left) path.push_back(left);
                apex = left;
                apex_i = left_i;
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
        // tighten the left side
        if (orient(apex, left, pl) <= 0) {
            if (apex == left || orient(apex, right, pl) > 0) {
                left = pl;
                left_i = i;
            } else {
                if (path.back() != right) path.push_back(right);
                apex = right;
                apex_i = right_i;
                left = right = apex;
                left_i = right_i = apex_i;
                i = apex_i;
                continue;
            }
        }
    }
    if (path.back() != t) path.push_back(t);
    result.length = chain_length(path);
    return result;
}

// ---------------------------------------------------------------------------
// Cached geodesic queries in a simple polygon
// ---------------------------------------------------------------------------

class GeodesicContext {
public:
    explicit GeodesicContext(const Polygon& poly) : poly_(poly), tri_(triangulate(poly)) {}

    const Polygon& polygon() const { return poly_; }
    const Triangulation& triangulation() const { return tri_; }

    ShortestPath path(const Point& s, const Point& t) const { return shortest_path(tri_, s, t); }

    double distance(const Point& s, const Point& t) const { return path(s, t).length; }

    // geodesic distances from s to every polygon corner
    std::vector<double> distances_to_corners(const Point& s) const {
        std::vector<double> d(poly_.size());
        for (std::size_t i = 0; i < poly_.size(); ++i) d[i] = distance(s, poly_.vertices[i]);
        return d;
    }

    double corner_distance(std::size_t i, std::size_t j) const {
        ensure_matrix();
        return corner_dist_[i * poly_.size() + j];
    }

    // attained at a pair of corners
    double geodesic_diameter() const {
        ensure_matrix();
        double best = 0.0;
        for (double d : corner_dist_) best = std::max(best, d);
        return best;
    }

private:
    void ensure_matrix() const {
        if (!corner_dist_.empty()) return;
        std::size_t n = poly_.size();
        corner_dist_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double d = distance(poly_.vertices[i], poly_.vertices[j]);
                corner_dist_[i * n + j] = corner_dist_[j * n + i] = d;
            }
    }

    Polygon poly_;
    Triangulation tri_;
    mutable std::vector<double> corner_dist_;
};

inline double geodesic_diameter(const Polygon& poly) {
    return GeodesicContext(poly).geodesic_diameter();
}

// ---------------------------------------------------------------------------
// Geodesics in weakly simple polygons (visibility graph over cycle vertices)
//
// Works for cycles with repeated vertices and doubled edges, where the
// triangulation-based engine does not apply.  Segment visibility is decided
// by splitting the segment at every contact with the cycle and testing each
// gap midpoint for even-odd closure membership; a doubled edge flips the
// crossing parity twice, so slits are traversable exactly when the local
// geometry allows it.
// ---------------------------------------------------------------------------

inline bool segment_in_closure(const Polygon& poly, const Point& a, const Point& b) {
    if (a == b) return point_in_closure(poly, a);
    Point d = b - a;
    double len2 = norm2(d);
    std::vector<double> params = {0.0, 1.0};
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Segment e = poly.edge(i);
        if (segments_cross(a, b, e.a, e.b)) {
            Point x = crossing_point(a, b, e.a, e.b);
            params.push_back(std::clamp(dot(x - a, d) / len2, 0.0, 1.0));
            continue;
        }
        for (const Point& p : {e.a, e.b})
            if (point_on_segment(p, a, b)) params.push_back(dot(p - a, d) / len2);
    }
    std::sort(params.begin(), params.end());
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
        if (params[k + 1] - params[k] <= 1e-12) continue;
        Point mid = lerp(a, b, 0.5 * (params[k] + params[k + 1]));
        if (point_in_polygon(poly, mid) == PointLocation::Outside) return false;
    }
    return true;
}

// All-pairs geodesic distances between the cycle vertices of a weakly simple
// polygon (each occurrence of a repeated vertex is a distinct node).
class WeakGeodesics {
public:
    explicit WeakGeodesics(const Polygon& poly) : poly_(poly) {
        std::size_t n = poly.size();
        constexpr double kInf = std::numeric_limits<double>::infinity();
        dist_.assign(n, std::vector<double>(n, kInf));
        via_.assign(n, std::vector<std::size_t>(n, SIZE_MAX));
        for (std::size_t i = 0; i < n; ++i) dist_[i][i] = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                bool neighbor = (j == i + 1) || (i == 0 && j == n - 1);
                double d;
                if (neighbor || poly.vertices[i] == poly.vertices[j])
                    d = dist(poly.vertices[i], poly.vertices[j]);
                else if (segment_in_closure(poly, poly.vertices[i], poly.vertices[j]))
                    d = dist(poly.vertices[i], poly.vertices[j]);
                else
                    continue;
                dist_[i][j] = dist_[j][i] = std::min(dist_[i][j], d);
            }
        // Floyd-Warshall; cycle edges keep the graph connected
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (dist_[i][k] == kInf) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    double nd = dist_[i][k] + dist_[k][j];
                    if (nd < dist_[i][j]) {
                        dist_[i][j] = nd;
                        via_[i][j] = k;
                    }
                }
            }
    }

    double distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }

    double diameter() const {
        double best = 0.0;
        for (const auto& row : dist_)
            for (double d : row) best = std::max(best, d);
        return best;
    }

    // vertex indices along the geodesic from i to j, inclusive
    std::vector<std::size_t> path(std::size_t i, std::size_t j) const {
        if (i == j) return {i};
        std::vector<std::size_t> out;
        build_path(i, j, out);
        out.push_back(j);
        return out;
    }

private:
    void build_path(std::size_t i, std::size_t j, std::vector<std::size_t>& out) const {
        std::size_t k = via_[i][j];
        if (k == SIZE_MAX) {
            out.push_back(i);
            return;
        }
        build_path(i, k, out);
        build_path(k, j, out);
    }

    Polygon poly_;
    std::vector<std::vector<double>> dist_;
    std::vector<std::vector<std::size_t>> via_;
};

// Geodesic diameter that accepts weakly simple input.
inline double geodesic_diameter_weak(const Polygon& poly) {
    return WeakGeodesics(poly).diameter();
}

} // namespace polypart
