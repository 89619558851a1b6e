#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polypart/polygon.hpp"

namespace polypart {

inline Polygon gen_rect(double w, double h) {
    return snapped(Polygon{{{0, 0}, {w, 0}, {w, h}, {0, h}}});
}

// star-shaped polygon: random radii at jittered sorted angles
inline Polygon gen_star(int n, std::mt19937& rng, double rmin = 1.0, double rmax = 3.0) {
    std::uniform_real_distribution<double> radius(rmin, rmax);
    std::uniform_real_distribution<double> jitter(0.0, 2.0 * M_PI / n * 0.8);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * M_PI * i / n + jitter(rng);
            double r = radius(rng);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        Polygon p = snapped(Polygon{pts});
        if (p.size() == std::size_t(n) && is_simple(p)) return is_ccw(p) ? p : reversed(p);
    }
    throw std::runtime_error("star generation failed");
}

// comb with upward prongs; long geodesics between neighbouring prong tips
inline Polygon gen_comb(int n) {
    int teeth = std::max(1, (n - 1) / 4);
    std::vector<Point> v;
    double x = 0.0;
    v.push_back({0.0, 0.0});
    for (int t = 0; t < teeth; ++t) {
        v.push_back({x, 5.0});
        v.push_back({x + 1.0, 5.0});
        v.push_back({x + 1.0, 1.0});
        if (t + 1 < teeth) v.push_back({x + 2.0, 1.0});
        x += 2.0;
    }
    v.push_back({x - 1.0, 0.0});
    std::reverse(v.begin(), v.end());
    Polygon p = snapped(Polygon{v});
    return is_ccw(p) ? p : reversed(p);
}

// two-walled Archimedean spiral corridor; inner wall vertices are reflex
inline Polygon gen_spiral(int n, double turns = 2.5) {
    if (n < 8) n = 8;
    // few vertices per turn makes the sampled walls cut across the corridor
    turns = std::min(turns, double(n) / 16.0);
    int outer = n - n / 2;
    int inner = n - outer;
    double T = 2.0 * M_PI * turns;
    double b = 1.0 / (2.0 * M_PI); // radial gap of 1 per turn
    double w = 0.45;               // corridor width
    double a = 0.6;
    std::vector<Point> v;
    for (int i = 0; i < outer; ++i) {
        double th = T * double(i) / double(outer - 1);
        double r = a + b * th + w;
        v.push_back({r * std::cos(th), r * std::sin(th)});
    }
    for (int i = inner - 1; i >= 0; --i) {
        double th = T * double(i) / double(inner - 1);
        double r = a + b * th;
        v.push_back({r * std::cos(th), r * std::sin(th)});
    }
    Polygon p = snapped(Polygon{v});
    if (!is_simple(p)) throw std::runtime_error("spiral generation failed");
    return is_ccw(p) ? p : reversed(p);
}

// random simple polygon: random points, then 2-opt untangling (reverse the
// sub-tour between any two crossing edges until none remain)
inline Polygon gen_random(int n, std::mt19937& rng, double extent = 10.0) {
    std::uniform_real_distribution<double> d(0.0, extent);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(snap({d(rng), d(rng)}));
        bool ok = true;
        long budget = 64L * n * n;
        bool crossing = true;
        while (crossing && ok) {
            crossing = false;
            for (int i = 0; i < n && ok; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                    if (segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
                        std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
                        crossing = true;
                        if (--budget < 0) ok = false;
                        break;
                    }
                }
            }
        }
        if (!ok) continue;
        Polygon p = snapped(Polygon{pts});
        if (p.size() == std::size_t(n) && is_simple(p)) return is_ccw(p) ? p : reversed(p);
    }
    throw std::runtime_error("random polygon generation failed");
}

inline Polygon generate_polygon(const std::string& family, int n, std::uint64_t seed,
                                double rect_w = 3.0, double rect_h = 1.0) {
    std::mt19937 rng{std::uint32_t(seed)};
    if (family == "rect") return gen_rect(rect_w, rect_h);
    if (family == "star") return gen_star(n, rng);
    if (family == "comb") return gen_comb(n);
    if (family == "spiral") return gen_spiral(n);
    if (family == "random") return gen_random(n, rng);
    throw std::invalid_argument("unknown polygon family: " + family);
}

} // namespace polypart
