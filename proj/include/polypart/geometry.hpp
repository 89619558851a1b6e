#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polypart {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Point& p) { return p.x * p.x + p.y * p.y; }
inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }
inline double dist2(const Point& a, const Point& b) { return norm2(a - b); }

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point lerp(const Point& a, const Point& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// ---------------------------------------------------------------------------
// Exact orientation predicate.
//
// Fast double evaluation with a forward error filter; falls back to an exact
// expansion-arithmetic evaluation when the filtered result is ambiguous
// (Shewchuk-style two-level adaptivity, here with the exact tail computed by
// double-double products which suffices for orientation of doubles).
// ---------------------------------------------------------------------------

namespace detail {

// Two-product via FMA: computes a*b exactly as hi + lo.
inline void two_product(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bv = s - a;
    e = (a - (s - bv)) + (b - bv);
}

// Sign of the 4-term sum (p_hi + p_lo) - (q_hi + q_lo), evaluated exactly
// via expansion addition.
inline int sign_of_difference(double phi, double plo, double qhi, double qlo) {
    // expansion e = (phi + plo) + (-qhi - qlo)
    double terms[4] = {plo, -qlo, phi, -qhi};
    // grow expansion
    double exp[4];
    int n = 0;
    for (double t : terms) {
        double q = t;
        for (int i = 0; i < n; ++i) {
            double s, e;
            two_sum(exp[i], q, s, e);
            exp[i] = e;
            q = s;
        }
        exp[n++] = q;
    }
    // exp[n-1] is the most significant component
    for (int i = n - 1; i >= 0; --i) {
        if (exp[i] > 0.0) return +1;
        if (exp[i] < 0.0) return -1;
    }
    return 0;
}

} // namespace detail

// +1 if c is strictly left of the directed line a->b, -1 if right, 0 if collinear.
inline int orient(const Point& a, const Point& b, const Point& c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }

    constexpr double errbound = 3.3306690738754716e-16; // (3 + 16 eps) eps
    if (det >= errbound * detsum || -det >= errbound * detsum)
        return det > 0.0 ? 1 : -1;

    double phi, plo, qhi, qlo;
    detail::two_product(a.x - c.x, b.y - c.y, phi, plo);
    detail::two_product(a.y - c.y, b.x - c.x, qhi, qlo);
    return detail::sign_of_difference(phi, plo, qhi, qlo);
}

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

struct Segment {
    Point a, b;
    double length() const { return dist(a, b); }
};

inline bool point_on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Strict interior crossing (shared endpoints / touching do not count).
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Any intersection, including touching and collinear overlap.
inline bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
    if (segments_cross(a, b, c, d)) return true;
    return point_on_segment(c, a, b) || point_on_segment(d, a, b) ||
           point_on_segment(a, c, d) || point_on_segment(b, c, d);
}

// Intersection point of properly crossing segments (double arithmetic).
inline Point crossing_point(const Point& a, const Point& b, const Point& c, const Point& d) {
    double denom = cross(b - a, d - c);
    double t = cross(c - a, d - c) / denom;
    t = std::clamp(t, 0.0, 1.0);
    return lerp(a, b, t);
}

inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    Point ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, lerp(a, b, t));
}

// ---------------------------------------------------------------------------
// Coordinate snapping
// ---------------------------------------------------------------------------

// Inputs are snapped to a 2^-30 lattice on ingestion, which bounds the bit
// growth of downstream exact computations.  Disable via CLI flag.
constexpr double kSnapGrain = 1.0 / 1073741824.0; // 2^-30

inline double snap_coord(double v) { return std::round(v / kSnapGrain) * kSnapGrain; }

inline Point snap(const Point& p) { return {snap_coord(p.x), snap_coord(p.y)}; }

} // namespace polypart
