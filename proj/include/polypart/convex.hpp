#pragma once

#include "polygon.hpp"

namespace polypart {

// Counterclockwise convex hull (monotone chain), collinear points removed.
// 1 or 2 distinct input points yield a degenerate 1- or 2-vertex hull.
inline Polygon convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::size_t n = pts.size();
    if (n <= 2) return Polygon{pts};
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    return Polygon{hull};
}

inline bool hull_is_degenerate(const Polygon& hull) { return hull.size() < 3; }

// Max pairwise Euclidean distance via rotating calipers on the hull.
inline double straight_diameter(const std::vector<Point>& pts) {
    Polygon hull = convex_hull(pts);
    std::size_t n = hull.size();
    if (n == 1) return 0.0;
    if (n == 2) return dist(hull[0], hull[1]);
    double best = 0.0;
    std::size_t j = 1;
    std::size_t advances = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Point e = hull.vertex(i + 1) - hull[i];
        // advance j while the next vertex is farther from edge i
        while (advances < 2 * n &&
               cross(e, hull.vertex(j + 1) - hull[i]) > cross(e, hull.vertex(j) - hull[i])) {
            j = (j + 1) % n;
            ++advances;
        }
        best = std::max(best, dist(hull[i], hull.vertex(j)));
        best = std::max(best, dist(hull.vertex(i + 1), hull.vertex(j)));
    }
    return best;
}

struct OrientedSquare {
    Point center;
    double half_side = 0.0;
    double angle = 0.0; // radians in [0, pi/2)

    // Corners, counterclockwise.
    std::vector<Point> corners() const {
        double c = std::cos(angle), s = std::sin(angle);
        Point u{c, s}, v{-s, c};
        return {
            {center.x - half_side * (u.x + v.x), center.y - half_side * (u.y + v.y)},
            {center.x + half_side * (u.x - v.x), center.y + half_side * (u.y - v.y)},
            {center.x + half_side * (u.x + v.x), center.y + half_side * (u.y + v.y)},
            {center.x - half_side * (u.x - v.x), center.y - half_side * (u.y - v.y)},
        };
    }
};

struct MinSquareResult {
    double angle = 0.0;
    double side = 0.0;
    OrientedSquare square;
};

namespace detail {

// Width of the point set along direction (cos phi, sin phi) and the
// perpendicular, as sinusoids A cos phi + B sin phi over a caliper interval
// where the support vertices are fixed.
struct SupportPair {
    Point lo, hi;
    // extent(phi) = (hi - lo) . dir(phi)
    double extent(double phi, bool perp) const {
        Point d = hi - lo;
        double c = std::cos(phi), s = std::sin(phi);
        return perp ? d.y * c - d.x * s : d.x * c + d.y * s;
    }
};

inline double rotated_extent(const Polygon& hull, double phi, bool perp, SupportPair* sp = nullptr) {
    double c = std::cos(phi), s = std::sin(phi);
    Point dir = perp ? Point{-s, c} : Point{c, s};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    Point plo{}, phi_pt{};
    for (const Point& p : hull.vertices) {
        double v = dot(p, dir);
        if (v < lo) { lo = v; plo = p; }
        if (v > hi) { hi = v; phi_pt = p; }
    }
    if (sp) *sp = {plo, phi_pt};
    return hull.size() ? hi - lo : 0.0;
}

} // namespace detail

// Sweeps phi over [0, pi/2) and returns the rotation minimizing the longer
// side of the smallest enclosing rectangle, together with a square of that
// side containing the points.  Candidate angles are the caliper events (hull
// edge directions mod pi/2) plus the analytic minima and crossings of the
// two width sinusoids inside each event interval.
inline MinSquareResult min_square_over_rotations(const std::vector<Point>& pts) {
    Polygon hull = convex_hull(pts);
    MinSquareResult best;
    best.side = std::numeric_limits<double>::infinity();

    std::vector<double> events{0.0};
    constexpr double half_pi = 1.5707963267948966;
    for (std::size_t i = 0; i < hull.size() && hull.size() >= 2; ++i) {
        Point e = hull.vertex(i + 1) - hull[i];
        if (e.x == 0.0 && e.y == 0.0) continue;
        double a = std::atan2(e.y, e.x);
        a = std::fmod(std::fmod(a, half_pi) + half_pi, half_pi);
        events.push_back(a);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    events.push_back(half_pi);

    auto consider = [&](double phi) {
        if (phi < 0.0 || phi >= half_pi) return;
        double w = detail::rotated_extent(hull, phi, false);
        double h = detail::rotated_extent(hull, phi, true);
        double side = std::max(w, h);
        if (side < best.side) {
            best.side = side;
            best.angle = phi;
        }
    };

    if (hull.size() == 0) return best;
    if (hull.size() == 1) {
        best.side = 0.0;
        best.angle = 0.0;
        best.square = {hull[0], 0.0, 0.0};
        return best;
    }

    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        double lo = events[k], hi = events[k + 1];
        consider(lo);
        consider(std::nexttoward(hi, lo)); // just inside the interval
        double mid = 0.5 * (lo + hi);
        detail::SupportPair sw, sh;
        detail::rotated_extent(hull, mid, false, &sw);
        detail::rotated_extent(hull, mid, true, &sh);
        // width(phi) = Aw cos + Bw sin, height(phi) = Ah cos + Bh sin
        Point dw = sw.hi - sw.lo, dh = sh.hi - sh.lo;
        double Aw = dw.x, Bw = dw.y;       // along dir(phi)
        double Ah = dh.y, Bh = -dh.x;      // along perp(phi)
        // interior extremum of each sinusoid: tan(phi) = B/A
        for (auto [A, B] : {std::pair{Aw, Bw}, std::pair{Ah, Bh}}) {
            double phi = std::atan2(B, A);
            for (double cand : {phi, phi + half_pi, phi - half_pi, phi + 2 * half_pi})
                if (cand > lo && cand < hi) consider(cand);
        }
        // crossing width == height: (Aw - Ah) cos + (Bw - Bh) sin = 0
        {
            double A = Aw - Ah, B = Bw - Bh;
            if (A != 0.0 || B != 0.0) {
                double phi = std::atan2(-A, B); // tan(phi) = -A/B
                for (double cand : {phi, phi + half_pi, phi - half_pi, phi + 2 * half_pi})
                    if (cand > lo && cand < hi) consider(cand);
            }
            // and width == -height cannot occur (both nonnegative)
        }
    }

    // Materialize the square at the best angle.
    double phi = best.angle;
    double c = std::cos(phi), s = std::sin(phi);
    Point u{c, s}, v{-s, c};
    double ulo = std::numeric_limits<double>::infinity(), uhi = -ulo;
    double vlo = ulo, vhi = -ulo;
    for (const Point& p : hull.vertices) {
        ulo = std::min(ulo, dot(p, u)); uhi = std::max(uhi, dot(p, u));
        vlo = std::min(vlo, dot(p, v)); vhi = std::max(vhi, dot(p, v));
    }
    double side = std::max(uhi - ulo, vhi - vlo);
    best.side = side;
    double cu = 0.5 * (ulo + uhi), cv = 0.5 * (vlo + vhi);
    best.square.center = {cu * u.x + cv * v.x, cu * u.y + cv * v.y};
    best.square.half_side = 0.5 * side;
    best.square.angle = phi;
    return best;
}

} // namespace polypart
