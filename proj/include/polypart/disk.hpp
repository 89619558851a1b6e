#pragma once

#include <random>

#include "convex.hpp"

namespace polypart {

struct Disk {
    Point center;
    double radius = 0.0;

    bool contains(const Point& p, double slack = 1e-12) const {
        return dist(center, p) <= radius + slack;
    }
};

namespace detail {

inline Disk disk_from_2(const Point& a, const Point& b) {
    Point c = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    return {c, 0.5 * dist(a, b)};
}

inline std::optional<Disk> circumscribed_disk(const Point& a, const Point& b, const Point& c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0.0) return std::nullopt;
    double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    Point center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                 (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return Disk{center, dist(center, a)};
}

// smallest disk containing pts[0..=upto] with p and q on its boundary
inline Disk disk_two_fixed(const std::vector<Point>& pts, std::size_t upto, const Point& p,
                           const Point& q) {
    Disk circ = disk_from_2(p, q);
    Point pq = q - p;
    // the center moves along the bisector of pq; track the extreme
    // circumcenters on each side of the line through p and q
    bool has_left = false, has_right = false;
    Disk left, right;
    double left_d = 0.0, right_d = 0.0;
    for (std::size_t k = 0; k <= upto; ++k) {
        const Point& r = pts[k];
        if (circ.contains(r)) continue;
        double side = cross(pq, r - p);
        auto c = circumscribed_disk(p, q, r);
        if (!c) continue;
        double cd = cross(pq, c->center - p);
        if (side > 0.0 && (!has_left || cd > left_d)) {
            left = *c;
            left_d = cd;
            has_left = true;
        } else if (side < 0.0 && (!has_right || cd < right_d)) {
            right = *c;
            right_d = cd;
            has_right = true;
        }
    }
    if (!has_left && !has_right) return circ;
    if (!has_left) return right;
    if (!has_right) return left;
    return left.radius <= right.radius ? left : right;
}

} // namespace detail

// Smallest disk containing all points (Welzl-style randomized incremental).
// Deterministic: fixed shuffle seed.
inline Disk min_enclosing_disk(std::vector<Point> pts) {
    if (pts.empty()) return {};
    std::mt19937 rng(0x5EEDu);
    std::shuffle(pts.begin(), pts.end(), rng);

    Disk d{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (d.contains(pts[i])) continue;
        // pts[i] is on the boundary of the disk for pts[0..=i]
        d = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (d.contains(pts[j])) continue;
            // pts[j] is on the boundary too
            if (d.radius == 0.0)
                d = detail::disk_from_2(pts[i], pts[j]);
            else
                d = detail::disk_two_fixed(pts, j, pts[i], pts[j]);
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Circular hull: intersection of all radius-r disks containing the points.
// ---------------------------------------------------------------------------

struct CircularArc {
    Point from;   // arc start (a support vertex)
    Point to;     // arc end (next support vertex counterclockwise)
    Point center; // center of the radius-r circle carrying the arc
};

struct CircularHull {
    bool feasible = false;
    // Support vertices counterclockwise with the arc following each; empty
    // for a single point (degenerate hull = the point).
    std::vector<CircularArc> arcs;
};

// O(h^2 n) construction over convex-hull vertex pairs: the arc between p and
// q (center on the right of p->q) is on the hull boundary iff every point
// lies in the corresponding disk.  Infeasible iff the min enclosing disk has
// radius > r.
inline CircularHull circular_hull(const std::vector<Point>& pts, double r) {
    CircularHull result;
    Disk med = min_enclosing_disk(pts);
    if (med.radius > r * (1.0 + 1e-12)) return result;
    result.feasible = true;

    Polygon hull = convex_hull(pts);
    if (hull.size() == 1) return result;

    auto arc_center = [&](const Point& p, const Point& q) -> std::optional<Point> {
        // center c with |c-p| = |c-q| = r, on the right side of p->q
        Point mid = {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
        double half = 0.5 * dist(p, q);
        if (half > r) return std::nullopt;
        double h = std::sqrt(std::max(0.0, r * r - half * half));
        Point dir = q - p;
        double len = norm(dir);
        Point n{dir.y / len, -dir.x / len}; // right normal
        return Point{mid.x + h * n.x, mid.y + h * n.y};
    };

    std::vector<CircularArc> arcs;
    std::size_t h = hull.size();
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            if (i == j) continue;
            auto c = arc_center(hull[i], hull[j]);
            if (!c) continue;
            bool all_inside = true;
            for (const Point& p : pts)
                if (dist(*c, p) > r * (1.0 + 1e-9)) { all_inside = false; break; }
            if (all_inside) arcs.push_back({hull[i], hull[j], *c});
        }
    }
    // Order the arcs into a cycle starting from an arbitrary support vertex.
    if (!arcs.empty()) {
        std::vector<CircularArc> cycle;
        cycle.push_back(arcs.front());
        while (cycle.size() < arcs.size()) {
            const Point& tail = cycle.back().to;
            bool extended = false;
            for (const CircularArc& a : arcs) {
                if (a.from == tail && (cycle.empty() || !(a.to == cycle.back().from))) {
                    bool used = false;
                    for (const CircularArc& u : cycle)
                        if (u.from == a.from && u.to == a.to) { used = true; break; }
                    if (used) continue;
                    cycle.push_back(a);
                    extended = true;
                    break;
                }
            }
            if (!extended) break;
        }
        result.arcs = std::move(cycle);
    }
    return result;
}

} // namespace polypart
