#pragma once

#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "polygon.hpp"

namespace polypart {

// ---------------------------------------------------------------------------
// Planar subdivision (doubly-connected edge list) built by overlaying closed
// region cycles, open polylines and optional axis-aligned grid lines.
//
// Region membership per face is computed by an even-odd parity sweep over the
// face adjacency graph, so weakly simple region cycles (doubled spike edges)
// are handled by construction: a doubled edge flips parity twice, i.e. not at
// all, after the canonical merge of coincident segments.
// ---------------------------------------------------------------------------

struct OverlayInput {
    std::vector<Polygon> regions;                  // closed cycles, region id = index
    std::vector<std::vector<Point>> polylines;     // open chains, no region semantics
    std::vector<double> vertical_lines;            // x = const, spanning the bbox
    std::vector<double> horizontal_lines;          // y = const
};

struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PlanarSubdivision {
public:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    struct HalfEdge {
        std::uint32_t origin = kNone;
        std::uint32_t twin = kNone;
        std::uint32_t next = kNone;
        std::uint32_t prev = kNone;
        std::uint32_t face = kNone;
    };

    struct Face {
        std::uint32_t outer = kNone;          // a half-edge on the outer cycle; kNone for the unbounded face
        std::vector<std::uint32_t> inner;     // one half-edge per hole contour
        double area = 0.0;
        bool unbounded = false;
        std::vector<std::uint32_t> regions;   // region ids with odd parity (sorted)

        bool in_region(std::uint32_t r) const {
            return std::binary_search(regions.begin(), regions.end(), r);
        }
    };

    std::vector<Point> vertices;
    std::vector<HalfEdge> halfedges;
    std::vector<Face> faces;
    std::uint32_t outer_face = kNone;

    std::uint32_t head(std::uint32_t h) const { return halfedges[halfedges[h].twin].origin; }
    const Point& origin_of(std::uint32_t h) const { return vertices[halfedges[h].origin]; }
    const Point& head_of(std::uint32_t h) const { return vertices[head(h)]; }

    // region ids with odd parity on the undirected edge of h
    const std::vector<std::uint32_t>& edge_regions(std::uint32_t h) const {
        return edge_regions_[h >> 1];
    }

    void build(const OverlayInput& input);

    // Interior sample point of a bounded face.
    Point face_sample(std::uint32_t f) const;

    // Face containing p (linear scan; p must not lie on an edge).
    std::uint32_t locate(const Point& p) const;

    // Cycle of points along the face walk starting at half-edge h.
    std::vector<Point> cycle_points(std::uint32_t h) const;

    // Weakly simple boundary cycle of the union of a set of bounded faces.
    // Vertex-pinched components are spliced at the shared vertex and holes
    // are attached with doubled bridge segments.
    // Boundary of the union of a set of faces.  `extra_edges` are undirected
    // edge ids (h >> 1) appended as doubled (zero-width) boundary edges where
    // neither adjacent face is in the set.
    Polygon trace_union(const std::vector<std::uint32_t>& face_set) const;

    double cycle_area(std::uint32_t h) const;
    double cycle_area_signed(std::uint32_t h) const; // sign evaluated exactly

private:
    std::vector<std::vector<std::uint32_t>> edge_regions_; // per undirected edge (index h>>1)
};

namespace detail {

struct PointKey {
    std::size_t operator()(const Point& p) const {
        std::uint64_t x, y;
        static_assert(sizeof(double) == 8);
        std::memcpy(&x, &p.x, 8);
        std::memcpy(&y, &p.y, 8);
        std::uint64_t h = x * 0x9E3779B97F4A7C15ull ^ (y + 0x7F4A7C15u);
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

struct LabeledSegment {
    Point a, b;
    std::vector<std::uint32_t> regions; // region ids this segment bounds (with multiplicity)
};

// Brute-force pair pruning via a uniform bucket grid over segment bboxes.
class SegmentHash {
public:
    SegmentHash(const std::vector<LabeledSegment>& segs, double cell) : cell_(cell) {
        for (std::size_t i = 0; i < segs.size(); ++i) insert(i, segs[i]);
    }
    template <typename F>
    void for_each_candidate_pair(F&& f) const {
        std::unordered_set<std::uint64_t> seen;
        for (const auto& [key, list] : buckets_) {
            for (std::size_t i = 0; i < list.size(); ++i)
                for (std::size_t j = i + 1; j < list.size(); ++j) {
                    std::uint64_t pk = (std::uint64_t(std::min(list[i], list[j])) << 32) |
                                       std::max(list[i], list[j]);
                    if (seen.insert(pk).second) f(list[i], list[j]);
                }
        }
    }

private:
    void insert(std::size_t idx, const LabeledSegment& s) {
        auto [lo_x, hi_x] = std::minmax(s.a.x, s.b.x);
        auto [lo_y, hi_y] = std::minmax(s.a.y, s.b.y);
        int ix0 = int(std::floor(lo_x / cell_)), ix1 = int(std::floor(hi_x / cell_));
        int iy0 = int(std::floor(lo_y / cell_)), iy1 = int(std::floor(hi_y / cell_));
        for (int ix = ix0; ix <= ix1; ++ix)
            for (int iy = iy0; iy <= iy1; ++iy)
                buckets_[(std::uint64_t(std::uint32_t(ix)) << 32) | std::uint32_t(iy)].push_back(
                    static_cast<std::uint32_t>(idx));
    }
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

} // namespace detail

namespace detail {

// exact sign of a sum of doubles given as (hi, lo) product pairs, via
// expansion accumulation; used when the filtered estimate is inconclusive
class ExpansionSum {
public:
    void add(double v) {
        if (v == 0.0) return;
        double q = v;
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            double s, e;
            polypart::detail::two_sum(exp_[i], q, s, e);
            exp_[i] = e;
            q = s;
        }
        exp_.push_back(q);
    }
    int sign() const {
        for (std::size_t i = exp_.size(); i-- > 0;) {
            if (exp_[i] > 0.0) return +1;
            if (exp_[i] < 0.0) return -1;
        }
        return 0;
    }

private:
    std::vector<double> exp_;
};

} // namespace detail

// Signed area of the face walk from `start` with an exactly evaluated sign:
// slivers of near-zero area must not flip between face and hole contour.
inline double PlanarSubdivision::cycle_area_signed(std::uint32_t start) const {
    double sum = 0.0, sumabs = 0.0;
    std::uint32_t h = start;
    std::size_t m = 0;
    do {
        double t = cross(origin_of(h), head_of(h));
        sum += t;
        sumabs += std::abs(t);
        ++m;
        h = halfedges[h].next;
    } while (h != start);
    double err = 3.33e-16 * sumabs * double(m);
    if (std::abs(sum) > err) return 0.5 * sum;

    detail::ExpansionSum ex;
    h = start;
    do {
        const Point& p = origin_of(h);
        const Point& q = head_of(h);
        double hi, lo;
        polypart::detail::two_product(p.x, q.y, hi, lo);
        ex.add(hi);
        ex.add(lo);
        polypart::detail::two_product(p.y, q.x, hi, lo);
        ex.add(-hi);
        ex.add(-lo);
        h = halfedges[h].next;
    } while (h != start);
    int s = ex.sign();
    if (s == 0) return 0.0;
    // exact sign, magnitude from the double estimate (clamped away from zero)
    double mag = std::max(std::abs(0.5 * sum), std::numeric_limits<double>::min());
    return s > 0 ? mag : -mag;
}

inline double PlanarSubdivision::cycle_area(std::uint32_t start) const {
    double a = 0.0;
    std::uint32_t h = start;
    do {
        a += cross(origin_of(h), head_of(h));
        h = halfedges[h].next;
    } while (h != start);
    return 0.5 * a;
}

inline std::vector<Point> PlanarSubdivision::cycle_points(std::uint32_t start) const {
    std::vector<Point> pts;
    std::uint32_t h = start;
    do {
        pts.push_back(origin_of(h));
        h = halfedges[h].next;
    } while (h != start);
    return pts;
}

inline void PlanarSubdivision::build(const OverlayInput& input) {
    using detail::LabeledSegment;

    // 1. gather labeled segments
    std::vector<LabeledSegment> segs;
    BoundingBox bb;
    for (std::uint32_t r = 0; r < input.regions.size(); ++r) {
        const Polygon& poly = input.regions[r];
        std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            Segment e = poly.edge(i);
            bb.expand(e.a);
            if (e.a == e.b) continue;
            segs.push_back({e.a, e.b, {r}});
        }
    }
    for (const auto& chain : input.polylines)
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            bb.expand(chain[i]);
            bb.expand(chain[i + 1]);
            if (chain[i] == chain[i + 1]) continue;
            segs.push_back({chain[i], chain[i + 1], {}});
        }
    double margin = std::max(bb.width(), bb.height()) * 0.01 + 1e-6;
    for (double x : input.vertical_lines)
        segs.push_back({{x, bb.min_y - margin}, {x, bb.max_y + margin}, {}});
    for (double y : input.horizontal_lines)
        segs.push_back({{bb.min_x - margin, y}, {bb.max_x + margin, y}, {}});

    if (segs.empty()) {
        vertices.clear();
        halfedges.clear();
        faces.assign(1, Face{});
        faces[0].unbounded = true;
        outer_face = 0;
        return;
    }

    // 2. split at pairwise intersections, iterated to a fixed point: fp
    //    crossing points can land an ulp off a shared endpoint, leaving
    //    subsegments that still cross each other.  New cut points are welded
    //    to existing ones within a tiny radius so that near-coincident
    //    crossings cannot spawn fresh vertices round after round.
    double weld_eps = 1e-12 * (std::max({bb.width(), bb.height(), 1.0}));
    std::unordered_map<std::uint64_t, std::vector<Point>> weld_pool;
    auto weld_key = [&](double x, double y) {
        auto q = [&](double v) { return std::uint64_t(std::int64_t(std::floor(v / (4.0 * weld_eps)))); };
        return (q(x) << 32) ^ (q(y) & 0xffffffffu);
    };
    auto weld = [&](const Point& p) -> Point {
        for (long di = -1; di <= 1; ++di)
            for (long dj = -1; dj <= 1; ++dj) {
                auto it = weld_pool.find(weld_key(p.x + 4.0 * weld_eps * double(di),
                                                  p.y + 4.0 * weld_eps * double(dj)));
                if (it == weld_pool.end()) continue;
                for (const Point& q : it->second)
                    if (std::abs(q.x - p.x) <= weld_eps && std::abs(q.y - p.y) <= weld_eps)
                        return q;
            }
        weld_pool[weld_key(p.x, p.y)].push_back(p);
        return p;
    };
    for (auto& s : segs) {
        s.a = weld(s.a);
        s.b = weld(s.b);
    }
    segs.erase(std::remove_if(segs.begin(), segs.end(),
                              [](const LabeledSegment& s) { return s.a == s.b; }),
               segs.end());

    for (int round = 0; round < 16; ++round) {
#ifdef POLYPART_DEBUG_OVERLAY
        std::fprintf(stderr, "overlay round %d: %zu segments\n", round, segs.size());
#endif
        std::vector<std::vector<Point>> cuts(segs.size());
        double total_len = 0.0;
        for (const auto& s : segs) total_len += dist(s.a, s.b);
        double hash_cell = std::max(total_len / segs.size(), 1e-9);
        detail::SegmentHash hash(segs, hash_cell);
        bool dirty = false;
        auto add_cut = [&](std::uint32_t i, const Point& raw) {
            Point p = weld(raw);
            if (p == segs[i].a || p == segs[i].b) return;
            cuts[i].push_back(p);
            dirty = true;
        };
        hash.for_each_candidate_pair([&](std::uint32_t i, std::uint32_t j) {
            const auto& s = segs[i];
            const auto& t = segs[j];
            // near-collinear pairs: intersection coordinates are
            // ill-conditioned, so split at each other's endpoints instead
            Point ds = s.b - s.a, dt = t.b - t.a;
            double ls2 = norm2(ds), lt2 = norm2(dt);
            double ls = std::sqrt(ls2), lt = std::sqrt(lt2);
            if (std::abs(cross(ds, t.a - s.a)) <= weld_eps * ls &&
                std::abs(cross(ds, t.b - s.a)) <= weld_eps * ls) {
                for (const Point& p : {t.a, t.b}) {
                    double u = dot(p - s.a, ds) / ls2;
                    if (u * ls > weld_eps && (1.0 - u) * ls > weld_eps) add_cut(i, p);
                }
                for (const Point& p : {s.a, s.b}) {
                    double u = dot(p - t.a, dt) / lt2;
                    if (u * lt > weld_eps && (1.0 - u) * lt > weld_eps) add_cut(j, p);
                }
                return;
            }
            if (segments_cross(s.a, s.b, t.a, t.b)) {
                Point x = crossing_point(s.a, s.b, t.a, t.b);
                add_cut(i, x);
                add_cut(j, x);
                return;
            }
            for (const Point& p : {t.a, t.b})
                if (point_on_segment(p, s.a, s.b)) add_cut(i, p);
            for (const Point& p : {s.a, s.b})
                if (point_on_segment(p, t.a, t.b)) add_cut(j, p);
        });
        if (!dirty) break;

        std::vector<LabeledSegment> next;
        next.reserve(segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i) {
            auto& s = segs[i];
            Point d = s.b - s.a;
            auto& cut = cuts[i];
            std::sort(cut.begin(), cut.end(), [&](const Point& p, const Point& q) {
                return dot(p - s.a, d) < dot(q - s.a, d);
            });
            std::vector<Point> pts;
            pts.push_back(s.a);
            for (const Point& p : cut)
                if (pts.back() != p && p != s.b) pts.push_back(p);
            pts.push_back(s.b);
            for (std::size_t k = 0; k + 1 < pts.size(); ++k)
                if (pts[k] != pts[k + 1]) next.push_back({pts[k], pts[k + 1], s.regions});
        }
        segs = std::move(next);
    }

    // 3. vertex pool + canonical merge of coincident subsegments
    vertices.clear();
    std::unordered_map<Point, std::uint32_t, detail::PointKey> vid;
    auto vertex_id = [&](const Point& p) {
        auto [it, fresh] = vid.try_emplace(p, std::uint32_t(vertices.size()));
        if (fresh) vertices.push_back(p);
        return it->second;
    };

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> edge_map;
    for (const auto& s : segs) {
        std::uint32_t u = vertex_id(s.a);
        std::uint32_t v = vertex_id(s.b);
        if (u == v) continue;
        auto key = std::minmax(u, v);
        auto& labels = edge_map[{key.first, key.second}];
        labels.insert(labels.end(), s.regions.begin(), s.regions.end());
    }

    // 4. half-edges, with parity labels per undirected edge
    halfedges.clear();
    edge_regions_.clear();
    halfedges.reserve(2 * edge_map.size());
    edge_regions_.reserve(edge_map.size());
    for (auto& [key, labels] : edge_map) {
        std::uint32_t h = std::uint32_t(halfedges.size());
        halfedges.push_back({key.first, h + 1, kNone, kNone, kNone});
        halfedges.push_back({key.second, h, kNone, kNone, kNone});
        std::sort(labels.begin(), labels.end());
        std::vector<std::uint32_t> odd;
        for (std::size_t k = 0; k < labels.size();) {
            std::size_t k2 = k;
            while (k2 < labels.size() && labels[k2] == labels[k]) ++k2;
            if ((k2 - k) % 2 == 1) odd.push_back(labels[k]);
            k = k2;
        }
        edge_regions_.push_back(std::move(odd));
    }

    // 5. rotation system: sort outgoing half-edges ccw around each vertex;
    //    next(h) = clockwise-next outgoing edge at head(h) after twin(h)
    std::vector<std::vector<std::uint32_t>> outgoing(vertices.size());
    for (std::uint32_t h = 0; h < halfedges.size(); ++h)
        outgoing[halfedges[h].origin].push_back(h);
    std::vector<std::uint32_t> rot_index(halfedges.size());
    for (std::uint32_t v = 0; v < vertices.size(); ++v) {
        auto& out = outgoing[v];
        std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
            Point pa = head_of(a) - vertices[v];
            Point pb = head_of(b) - vertices[v];
            int ha = (pa.y < 0 || (pa.y == 0 && pa.x < 0)) ? 1 : 0;
            int hb = (pb.y < 0 || (pb.y == 0 && pb.x < 0)) ? 1 : 0;
            if (ha != hb) return ha < hb;
            int cr = orient(vertices[v], head_of(a), head_of(b));
            if (cr != 0) return cr > 0;
            return a < b;
        });
        for (std::uint32_t k = 0; k < out.size(); ++k) rot_index[out[k]] = k;
    }
    for (std::uint32_t h = 0; h < halfedges.size(); ++h) {
        std::uint32_t t = halfedges[h].twin;
        std::uint32_t v = halfedges[t].origin;
        const auto& out = outgoing[v];
        std::uint32_t k = rot_index[t];
        std::uint32_t nxt = out[(k + out.size() - 1) % out.size()]; // clockwise-next
        halfedges[h].next = nxt;
        halfedges[nxt].prev = h;
    }

    // 6. cycles
    struct Cycle {
        std::uint32_t start;
        double area;
        std::uint32_t face = kNone;
    };
    std::vector<Cycle> cycles;
    std::vector<std::uint32_t> cycle_of(halfedges.size(), kNone);
    for (std::uint32_t h = 0; h < halfedges.size(); ++h) {
        if (cycle_of[h] != kNone) continue;
        std::uint32_t c = std::uint32_t(cycles.size());
        std::uint32_t cur = h;
        do {
            cycle_of[cur] = c;
            cur = halfedges[cur].next;
        } while (cur != h);
        cycles.push_back({h, cycle_area_signed(h)});
    }

    // 7. faces: positive cycles are outer boundaries; non-positive cycles are
    //    hole/outer-face contours, assigned to the smallest containing
    //    positive cycle
    faces.clear();
    outer_face = kNone;
    for (auto& c : cycles) {
        if (c.area > 0.0) {
            c.face = std::uint32_t(faces.size());
            Face f;
            f.outer = c.start;
            f.area = c.area;
            faces.push_back(f);
        }
    }
    Face unbounded;
    unbounded.unbounded = true;
    outer_face = std::uint32_t(faces.size());
    faces.push_back(unbounded);

    std::vector<std::vector<Point>> pos_cycles;
    std::vector<std::uint32_t> pos_face;
    for (const auto& c : cycles)
        if (c.area > 0.0) {
            pos_cycles.push_back(cycle_points(c.start));
            pos_face.push_back(c.face);
        }
    for (auto& c : cycles) {
        if (c.area > 0.0) continue;
        // representative vertex: lexicographic min of the cycle
        Point rep = origin_of(c.start);
        std::uint32_t cur = halfedges[c.start].next;
        while (cur != c.start) {
            if (origin_of(cur) < rep) rep = origin_of(cur);
            cur = halfedges[cur].next;
        }
        std::uint32_t best = outer_face;
        double best_area = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pos_cycles.size(); ++k) {
            if (faces[pos_face[k]].area >= best_area) continue;
            Polygon probe{pos_cycles[k]};
            if (point_in_polygon(probe, rep) == PointLocation::Inside) {
                best = pos_face[k];
                best_area = faces[pos_face[k]].area;
            }
        }
        c.face = best;
        faces[best].inner.push_back(c.start);
        faces[best].area += c.area; // c.area <= 0
    }
    for (std::uint32_t h = 0; h < halfedges.size(); ++h)
        halfedges[h].face = cycles[cycle_of[h]].face;

    // 8. region labels: classify an interior sample of each face against the
    //    original region cycles with exact predicates.  (Transporting parity
    //    across edges would accumulate the errors of the perturbed split
    //    geometry; direct sampling is robust.  Slivers whose sample cannot
    //    be placed stay unlabeled — they carry no measurable area.)
    for (std::uint32_t f = 0; f < faces.size(); ++f) {
        if (faces[f].unbounded) continue;
        Point s;
        try {
            s = face_sample(f);
        } catch (const DegeneracyError&) {
            continue;
        }
        for (std::uint32_t r = 0; r < input.regions.size(); ++r)
            if (point_in_polygon(input.regions[r], s) == PointLocation::Inside)
                faces[f].regions.push_back(r);
    }
}

inline Point PlanarSubdivision::face_sample(std::uint32_t f) const {
    const Face& face = faces[f];
    if (face.outer == kNone) throw std::logic_error("no sample point for the unbounded face");
    std::vector<Point> outer = cycle_points(face.outer);
    Polygon outer_poly{outer};
    std::vector<Polygon> holes;
    for (std::uint32_t h : face.inner) holes.push_back(Polygon{cycle_points(h)});

    auto inside_face = [&](const Point& p) {
        if (point_in_polygon(outer_poly, p) != PointLocation::Inside) return false;
        for (const Polygon& hole : holes)
            if (point_in_polygon(hole, p) != PointLocation::Outside) return false;
        return true;
    };

    // the lexicographically smallest cycle vertex has a strictly convex corner
    std::size_t n = outer.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (outer[i] < outer[best]) best = i;
    const Point& v = outer[best];
    const Point& a = outer[(best + n - 1) % n];
    const Point& b = outer[(best + 1) % n];
    Point mid = {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    for (int k = 1; k <= 60; ++k) {
        double t = std::pow(0.5, k);
        Point cand = lerp(v, mid, t);
        if (inside_face(cand)) return cand;
    }
    // fall back to edge-midpoint probing
    for (std::size_t i = 0; i < n; ++i) {
        Point m = lerp(outer[i], outer[(i + 1) % n], 0.5);
        Point dir = outer[(i + 1) % n] - outer[i];
        double len = norm(dir);
        if (len == 0.0) continue;
        Point inward{-dir.y / len, dir.x / len};
        for (int k = 6; k <= 50; ++k) {
            Point cand = m + std::pow(0.5, k) * len * inward;
            if (inside_face(cand)) return cand;
        }
    }
    throw DegeneracyError("could not find an interior sample point of a face");
}

inline std::uint32_t PlanarSubdivision::locate(const Point& p) const {
    std::uint32_t best = outer_face;
    double best_area = std::numeric_limits<double>::infinity();
    for (std::uint32_t f = 0; f < faces.size(); ++f) {
        if (faces[f].outer == kNone) continue;
        if (faces[f].area >= best_area) continue;
        Polygon outer{cycle_points(faces[f].outer)};
        if (point_in_polygon(outer, p) != PointLocation::Inside) continue;
        bool in_hole = false;
        for (std::uint32_t h : faces[f].inner) {
            Polygon hole{cycle_points(h)};
            if (point_in_polygon(hole, p) == PointLocation::Inside) { in_hole = true; break; }
        }
        if (in_hole) continue;
        best = f;
        best_area = faces[f].area;
    }
    return best;
}

inline Polygon PlanarSubdivision::trace_union(const std::vector<std::uint32_t>& face_set) const {
    std::vector<char> in_set(faces.size(), 0);
    for (std::uint32_t f : face_set) in_set[f] = 1;

    std::vector<char> boundary(halfedges.size(), 0);
    for (std::uint32_t h = 0; h < halfedges.size(); ++h)
        boundary[h] = in_set[halfedges[h].face] && !in_set[halfedges[halfedges[h].twin].face];

    auto successor = [&](std::uint32_t h) {
        std::uint32_t g = halfedges[h].next;
        while (!boundary[g]) g = halfedges[halfedges[g].twin].next;
        return g;
    };

    std::vector<char> used(halfedges.size(), 0);
    struct TracedCycle {
        std::vector<Point> pts;
        double area;
    };
    std::vector<TracedCycle> traced;
    for (std::uint32_t h0 = 0; h0 < halfedges.size(); ++h0) {
        if (!boundary[h0] || used[h0]) continue;
        std::vector<Point> pts;
        double area = 0.0;
        std::uint32_t h = h0;
        do {
            used[h] = 1;
            pts.push_back(origin_of(h));
            area += cross(origin_of(h), head_of(h));
            h = successor(h);
        } while (h != h0);
        traced.push_back({std::move(pts), 0.5 * area});
    }
    if (traced.empty()) return Polygon{};

    // splice cycles together: positive cycles sharing a vertex merge at the
    // pinch; remaining cycles (holes or detached components) are attached
    // with a doubled bridge to the closest boundary point of the result
    std::sort(traced.begin(), traced.end(),
              [](const TracedCycle& a, const TracedCycle& b) { return a.area > b.area; });
    std::vector<Point> result = traced[0].pts;
    for (std::size_t c = 1; c < traced.size(); ++c) {
        const auto& cyc = traced[c].pts;
        // shared vertex?
        bool spliced = false;
        for (std::size_t i = 0; i < result.size() && !spliced; ++i) {
            for (std::size_t j = 0; j < cyc.size(); ++j) {
                if (result[i] == cyc[j]) {
                    std::vector<Point> merged(result.begin(), result.begin() + i + 1);
                    for (std::size_t k = 1; k <= cyc.size(); ++k)
                        merged.push_back(cyc[(j + k) % cyc.size()]);
                    merged.insert(merged.end(), result.begin() + i + 1, result.end());
                    result = std::move(merged);
                    spliced = true;
                    break;
                }
            }
        }
        if (spliced) continue;
        // doubled bridge between the closest pair of vertices
        std::size_t bi = 0, bj = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < result.size(); ++i)
            for (std::size_t j = 0; j < cyc.size(); ++j) {
                double d = dist2(result[i], cyc[j]);
                if (d < bd) { bd = d; bi = i; bj = j; }
            }
        std::vector<Point> merged(result.begin(), result.begin() + bi + 1);
        for (std::size_t k = 0; k <= cyc.size(); ++k) merged.push_back(cyc[(bj + k) % cyc.size()]);
        merged.insert(merged.end(), result.begin() + bi, result.end());
        result = std::move(merged);
    }
    return Polygon{result};
}

// Convenience one-shot overlay.
inline PlanarSubdivision overlay(const OverlayInput& input) {
    PlanarSubdivision sub;
    sub.build(input);
    return sub;
}

} // namespace polypart
