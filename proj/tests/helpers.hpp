#pragma once

#include <random>

#include "polypart/polygon.hpp"

namespace testutil {

using namespace polypart;

inline Polygon rect(double x0, double y0, double x1, double y1) {
    return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

// L-shape: unit square with the top-right quadrant removed, scaled
inline Polygon ell(double s = 1.0) {
    return Polygon{{{0, 0}, {s, 0}, {s, 0.5 * s}, {0.5 * s, 0.5 * s}, {0.5 * s, s}, {0, s}}};
}

// comb with `teeth` upward prongs; good for long geodesics
inline Polygon comb(int teeth, double tooth_w = 1.0, double tooth_h = 4.0, double base_h = 1.0) {
    std::vector<Point> v;
    double x = 0.0;
    v.push_back({0.0, 0.0});
    for (int t = 0; t < teeth; ++t) {
        v.push_back({x, base_h + tooth_h});
        v.push_back({x + tooth_w, base_h + tooth_h});
        v.push_back({x + tooth_w, base_h});
        if (t + 1 < teeth) v.push_back({x + 2.0 * tooth_w, base_h});
        x += 2.0 * tooth_w;
    }
    // close along the bottom
    double xr = x - tooth_w;
    v.push_back({xr, 0.0});
    std::reverse(v.begin(), v.end()); // make counterclockwise
    Polygon p{v};
    if (!is_ccw(p)) p = reversed(p);
    return snapped(p);
}

// star-shaped simple polygon: random radii at sorted angles around a center
inline Polygon random_star(std::mt19937& rng, int n, double rmin = 0.5, double rmax = 2.0,
                           Point center = {0, 0}) {
    std::uniform_real_distribution<double> radius(rmin, rmax);
    std::uniform_real_distribution<double> jitter(0.0, 2.0 * M_PI / n * 0.8);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n + jitter(rng);
        double r = radius(rng);
        pts.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
    }
    Polygon p{pts};
    p = snapped(p);
    // snapping could in principle collapse vertices; regenerate in that case
    if (!is_simple(p)) return random_star(rng, n, rmin, rmax, center);
    return p;
}

inline std::vector<Point> random_points(std::mt19937& rng, int n, double lo = -3.0,
                                        double hi = 3.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(snap({d(rng), d(rng)}));
    return pts;
}

// ---------------------------------------------------------------------------
// Oracles (deliberately brute-force and independent of the library internals)
// ---------------------------------------------------------------------------

inline double oracle_diameter(const std::vector<Point>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

// min enclosing disk by trying every pair-diametral and triple-circumscribed
// circle, O(n^4)
inline double oracle_med_radius(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return 0.0;
    auto covers = [&](Point c, double r) {
        for (const Point& p : pts)
            if (dist(c, p) > r * (1.0 + 1e-12) + 1e-15) return false;
        return true;
    };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Point c = {0.5 * (pts[i].x + pts[j].x), 0.5 * (pts[i].y + pts[j].y)};
            double r = 0.5 * dist(pts[i], pts[j]);
            if (r < best && covers(c, r)) best = r;
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                const Point &a = pts[i], &b = pts[j], &q = pts[k];
                double d = 2.0 * (a.x * (b.y - q.y) + b.x * (q.y - a.y) + q.x * (a.y - b.y));
                if (d == 0.0) continue;
                double a2 = norm2(a), b2 = norm2(b), q2 = norm2(q);
                Point cc{(a2 * (b.y - q.y) + b2 * (q.y - a.y) + q2 * (a.y - b.y)) / d,
                         (a2 * (q.x - b.x) + b2 * (a.x - q.x) + q2 * (b.x - a.x)) / d};
                double rr = dist(cc, a);
                if (rr < best && covers(cc, rr)) best = rr;
            }
        }
    return best;
}

// smallest over a dense angle grid of the larger bounding-rectangle side
inline double oracle_min_square_side(const std::vector<Point>& pts, int steps = 20000) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < steps; ++k) {
        double phi = (M_PI / 2.0) * k / steps;
        double c = std::cos(phi), s = std::sin(phi);
        double ulo = 1e300, uhi = -1e300, vlo = 1e300, vhi = -1e300;
        for (const Point& p : pts) {
            double u = p.x * c + p.y * s, v = -p.x * s + p.y * c;
            ulo = std::min(ulo, u);
            uhi = std::max(uhi, u);
            vlo = std::min(vlo, v);
            vhi = std::max(vhi, v);
        }
        best = std::min(best, std::max(uhi - ulo, vhi - vlo));
    }
    return best;
}

// geodesic shortest path length inside a simple polygon via a visibility
// graph over {corners, s, t} and Dijkstra
inline double oracle_geodesic(const Polygon& poly, const Point& s, const Point& t) {
    std::vector<Point> nodes = poly.vertices;
    nodes.push_back(s);
    nodes.push_back(t);
    std::size_t n = nodes.size();

    auto visible = [&](const Point& a, const Point& b) {
        if (a == b) return true;
        std::size_t m = poly.size();
        for (std::size_t i = 0; i < m; ++i) {
            Segment e = poly.edge(i);
            if (segments_cross(a, b, e.a, e.b)) return false;
        }
        // split at collinear boundary contacts and test each gap midpoint
        Point d = b - a;
        double len2 = norm2(d);
        std::vector<double> params{0.0, 1.0};
        for (const Point& v : poly.vertices)
            if (point_on_segment(v, a, b)) params.push_back(dot(v - a, d) / len2);
        std::sort(params.begin(), params.end());
        for (std::size_t k = 0; k + 1 < params.size(); ++k) {
            if (params[k + 1] - params[k] < 1e-12) continue;
            Point mid = lerp(a, b, 0.5 * (params[k] + params[k + 1]));
            if (point_in_polygon(poly, mid) == PointLocation::Outside) return false;
        }
        return true;
    };

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (visible(nodes[i], nodes[j])) w[i][j] = w[j][i] = dist(nodes[i], nodes[j]);

    // Dijkstra from s (node n-2) to t (node n-1)
    std::vector<double> d(n, kInf);
    std::vector<char> done(n, 0);
    d[n - 2] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        double bestd = kInf;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && d[i] < bestd) { bestd = d[i]; u = i; }
        if (u == n) break;
        done[u] = 1;
        for (std::size_t v = 0; v < n; ++v)
            if (w[u][v] < kInf) d[v] = std::min(d[v], d[u] + w[u][v]);
    }
    return d[n - 1];
}

} // namespace testutil
