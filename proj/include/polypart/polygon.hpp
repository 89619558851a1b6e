#pragma once

#include <cstddef>
#include <string>

#include "geometry.hpp"

namespace polypart {

// A closed vertex chain, counterclockwise, last vertex implicitly connected
// to the first.  Also used for weakly simple polygons (repeated vertices and
// overlapping edges permitted); algorithms that require simplicity say so.
struct Polygon {
    std::vector<Point> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point& operator[](std::size_t i) const { return vertices[i]; }
    Point& operator[](std::size_t i) { return vertices[i]; }
    const Point& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
    Segment edge(std::size_t i) const {
        return {vertices[i % vertices.size()], vertices[(i + 1) % vertices.size()]};
    }
};

using WeaklySimplePolygon = Polygon;

inline double signed_area(const Polygon& poly) {
    double a = 0.0;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly.vertices[i];
        const Point& q = poly.vertices[(i + 1) % n];
        a += cross(p, q);
    }
    return 0.5 * a;
}

inline double polygon_area(const Polygon& poly) { return signed_area(poly); }

inline double perimeter(const Polygon& poly) {
    double len = 0.0;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) len += poly.edge(i).length();
    return len;
}

inline double chain_length(const std::vector<Point>& chain) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) len += dist(chain[i], chain[i + 1]);
    return len;
}

enum class PointLocation { Inside, Boundary, Outside };

// Crossing-number classification with exact on-boundary detection.
inline PointLocation point_in_polygon(const Polygon& poly, const Point& p) {
    std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[(i + 1) % n];
        if (point_on_segment(p, a, b)) return PointLocation::Boundary;
        // half-open crossing rule on y
        if ((a.y > p.y) != (b.y > p.y)) {
            int side = orient(a, b, p);
            if (b.y > a.y ? side > 0 : side < 0) inside = !inside;
        }
    }
    return inside ? PointLocation::Inside : PointLocation::Outside;
}

// Even-odd membership of the closure (boundary counts as inside).
inline bool point_in_closure(const Polygon& poly, const Point& p) {
    return point_in_polygon(poly, p) != PointLocation::Outside;
}

struct SelfIntersection {
    std::size_t edge_i = 0;
    std::size_t edge_j = 0;
    Point where;
};

// First self-intersection of the closed chain, if any.  A polygon with one
// is not simple.  Consecutive equal vertices also disqualify.
inline std::optional<SelfIntersection> find_self_intersection(const Polygon& poly) {
    std::size_t n = poly.size();
    if (n < 3) return SelfIntersection{0, 0, n ? poly.vertices[0] : Point{}};
    for (std::size_t i = 0; i < n; ++i)
        if (poly.vertices[i] == poly.vertices[(i + 1) % n])
            return SelfIntersection{i, i, poly.vertices[i]};
    for (std::size_t i = 0; i < n; ++i) {
        Segment e1 = poly.edge(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            Segment e2 = poly.edge(j);
            if (adjacent) {
                // shared endpoint; any further contact is an intersection
                const Point& shared = (j == i + 1) ? e1.b : e1.a;
                const Point& tip1 = (j == i + 1) ? e1.a : e1.b;
                const Point& tip2 = (j == i + 1) ? e2.b : e2.a;
                if (point_on_segment(tip2, e1.a, e1.b) || point_on_segment(tip1, e2.a, e2.b))
                    return SelfIntersection{i, j, shared};
            } else if (segments_intersect(e1.a, e1.b, e2.a, e2.b)) {
                Point w = segments_cross(e1.a, e1.b, e2.a, e2.b)
                              ? crossing_point(e1.a, e1.b, e2.a, e2.b)
                              : (point_on_segment(e2.a, e1.a, e1.b) ? e2.a : e2.b);
                return SelfIntersection{i, j, w};
            }
        }
    }
    return std::nullopt;
}

inline bool is_simple(const Polygon& poly) { return !find_self_intersection(poly).has_value(); }

inline bool is_ccw(const Polygon& poly) { return signed_area(poly) > 0.0; }

inline Polygon reversed(Polygon poly) {
    std::reverse(poly.vertices.begin(), poly.vertices.end());
    return poly;
}

inline Polygon snapped(Polygon poly) {
    for (Point& p : poly.vertices) p = snap(p);
    return poly;
}

struct BoundingBox {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void expand(const Point& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

inline BoundingBox bounding_box(const std::vector<Point>& pts) {
    BoundingBox bb;
    for (const Point& p : pts) bb.expand(p);
    return bb;
}

// ---------------------------------------------------------------------------
// Positions and intervals on the boundary of a polygon
// ---------------------------------------------------------------------------

// Exact location on the boundary as (edge index, parameter along the edge).
// Canonical form keeps t in [0, 1); a vertex is represented as t = 0 on its
// outgoing edge.
struct BoundaryPosition {
    std::size_t edge_index = 0;
    double t = 0.0;

    friend bool operator==(const BoundaryPosition& a, const BoundaryPosition& b) {
        return a.edge_index == b.edge_index && a.t == b.t;
    }
};

inline BoundaryPosition canonical(BoundaryPosition pos, std::size_t n) {
    if (pos.t >= 1.0) {
        pos.edge_index = (pos.edge_index + 1) % n;
        pos.t = 0.0;
    }
    pos.edge_index %= n;
    return pos;
}

inline Point boundary_point(const Polygon& poly, const BoundaryPosition& pos) {
    Segment e = poly.edge(pos.edge_index);
    return lerp(e.a, e.b, pos.t);
}

// Arc length from vertex 0 to pos, counterclockwise.
inline double arc_length(const Polygon& poly, const BoundaryPosition& pos) {
    double len = 0.0;
    for (std::size_t i = 0; i < pos.edge_index; ++i) len += poly.edge(i).length();
    return len + pos.t * poly.edge(pos.edge_index).length();
}

// Counterclockwise boundary chain from `from` to `to`, including both
// endpoints and all polygon corners strictly between them.  If from == to
// the full closed boundary is returned (ending where it started).
inline std::vector<Point> boundary_chain(const Polygon& poly, const BoundaryPosition& from,
                                         const BoundaryPosition& to) {
    std::size_t n = poly.size();
    std::vector<Point> chain;
    chain.push_back(boundary_point(poly, from));
    std::size_t edge = from.edge_index;
    double t = from.t;
    while (true) {
        bool same_edge = (edge == to.edge_index);
        if (same_edge && t <= to.t && !(from == to && chain.size() == 1)) {
            Point end = boundary_point(poly, to);
            if (chain.back() != end) chain.push_back(end);
            break;
        }
        // advance to the next corner
        edge = (edge + 1) % n;
        t = 0.0;
        Point corner = poly.vertices[edge];
        if (chain.back() != corner) chain.push_back(corner);
        if (edge == to.edge_index && to.t == 0.0) break;
    }
    return chain;
}

// Position advanced along the boundary by a (nonnegative) arc length.
inline BoundaryPosition advance(const Polygon& poly, BoundaryPosition pos, double arc) {
    std::size_t n = poly.size();
    pos = canonical(pos, n);
    while (arc > 0.0) {
        Segment e = poly.edge(pos.edge_index);
        double len = e.length();
        double remaining = (1.0 - pos.t) * len;
        if (arc < remaining) {
            pos.t += arc / len;
            return pos;
        }
        arc -= remaining;
        pos.edge_index = (pos.edge_index + 1) % n;
        pos.t = 0.0;
    }
    return pos;
}

// Counterclockwise arc length from a to b along the boundary.
inline double arc_between(const Polygon& poly, const BoundaryPosition& a,
                          const BoundaryPosition& b) {
    double la = arc_length(poly, a);
    double lb = arc_length(poly, b);
    double total = perimeter(poly);
    double d = lb - la;
    if (d < 0.0) d += total;
    return d;
}

// Index of the lexicographically smallest vertex.
inline std::size_t lexicographic_min_vertex(const Polygon& poly) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < poly.size(); ++i)
        if (poly.vertices[i] < poly.vertices[best]) best = i;
    return best;
}

} // namespace polypart
