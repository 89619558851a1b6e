#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polypart/convex.hpp"
#include "polypart/geodesic.hpp"

using namespace polypart;
using namespace testutil;

namespace {

Point random_inside(std::mt19937& rng, const Polygon& poly) {
    BoundingBox bb = bounding_box(poly.vertices);
    std::uniform_real_distribution<double> dx(bb.min_x, bb.max_x), dy(bb.min_y, bb.max_y);
    for (int tries = 0; tries < 10000; ++tries) {
        Point p = snap({dx(rng), dy(rng)});
        if (point_in_polygon(poly, p) == PointLocation::Inside) return p;
    }
    FAIL("could not sample an interior point");
    return {};
}

void check_path_valid(const Polygon& poly, const ShortestPath& sp, const Point& s,
                      const Point& t) {
    REQUIRE(!sp.waypoints.empty());
    CHECK(sp.waypoints.front() == s);
    CHECK(sp.waypoints.back() == t);
    CHECK(sp.length == Catch::Approx(chain_length(sp.waypoints)));
    // every segment of the path stays in the closure
    for (std::size_t i = 0; i + 1 < sp.waypoints.size(); ++i)
        CHECK(segment_in_closure(poly, sp.waypoints[i], sp.waypoints[i + 1]));
    // interior waypoints are polygon corners
    for (std::size_t i = 1; i + 1 < sp.waypoints.size(); ++i) {
        bool is_corner = false;
        for (const Point& v : poly.vertices)
            if (v == sp.waypoints[i]) { is_corner = true; break; }
        CHECK(is_corner);
    }
}

} // namespace

TEST_CASE("shortest path in a convex polygon is the segment") {
    Polygon sq = rect(0, 0, 4, 4);
    GeodesicContext ctx(sq);
    auto sp = ctx.path({1, 1}, {3, 3});
    CHECK(sp.waypoints.size() == 2);
    CHECK(sp.length == Catch::Approx(std::sqrt(8.0)));
}

TEST_CASE("shortest path bends around a reflex corner") {
    Polygon l = ell(2.0); // reflex corner at (1,1)
    GeodesicContext ctx(l);
    // grazes the reflex corner (1,1) exactly
    auto sp = ctx.path({1.5, 0.5}, {0.5, 1.5});
    CHECK(sp.length == Catch::Approx(2.0 * std::sqrt(0.5)));
    // strictly below the corner the path must bend at it
    auto sp2 = ctx.path({1.75, 0.5}, {0.5, 1.75});
    REQUIRE(sp2.waypoints.size() == 3);
    CHECK(sp2.waypoints[1] == Point{1, 1});
    CHECK(sp2.length == Catch::Approx(dist({1.75, 0.5}, {1, 1}) + dist({1, 1}, {0.5, 1.75})));
}

TEST_CASE("shortest path endpoints coincide or on boundary") {
    Polygon l = ell(2.0);
    GeodesicContext ctx(l);
    CHECK(ctx.path({0.5, 0.5}, {0.5, 0.5}).length == 0.0);
    // boundary endpoints
    auto sp = ctx.path({0, 0}, {2, 1});
    CHECK(sp.length == Catch::Approx(std::sqrt(5.0)));
    // corner-to-corner across the notch: must bend at the reflex corner
    auto sp2 = ctx.path({2, 1}, {1, 2});
    CHECK(sp2.length == Catch::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("funnel matches visibility-graph Dijkstra oracle") {
    std::mt19937 rng(53);
    std::vector<Polygon> shapes = {ell(3.0), comb(4), comb(8, 0.8, 6.0, 0.7)};
    for (int i = 0; i < 25; ++i) shapes.push_back(random_star(rng, 6 + i % 30));

    for (const Polygon& poly : shapes) {
        GeodesicContext ctx(poly);
        for (int iter = 0; iter < 8; ++iter) {
            Point s = random_inside(rng, poly);
            Point t = random_inside(rng, poly);
            auto sp = ctx.path(s, t);
            check_path_valid(poly, sp, s, t);
            double oracle = oracle_geodesic(poly, s, t);
            CHECK(sp.length == Catch::Approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("geodesic diameter of known shapes") {
    // square: diagonal
    CHECK(geodesic_diameter(rect(0, 0, 3, 4)) == Catch::Approx(5.0));
    // comb: between the tips of the outermost teeth
    Polygon c = comb(3, 1.0, 4.0, 1.0);
    GeodesicContext ctx(c);
    double d = ctx.geodesic_diameter();
    double oracle = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            oracle = std::max(oracle, oracle_geodesic(c, c.vertices[i], c.vertices[j]));
    CHECK(d == Catch::Approx(oracle).epsilon(1e-9));
    CHECK(d > straight_diameter(c.vertices));
}

TEST_CASE("geodesic diameter vs oracle on random stars") {
    std::mt19937 rng(59);
    for (int iter = 0; iter < 15; ++iter) {
        Polygon p = random_star(rng, 6 + iter * 2);
        double d = geodesic_diameter(p);
        double oracle = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                oracle = std::max(oracle, oracle_geodesic(p, p.vertices[i], p.vertices[j]));
        CHECK(d == Catch::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("weak geodesics agree with funnel on simple polygons") {
    std::mt19937 rng(61);
    std::vector<Polygon> shapes = {ell(2.0), comb(3)};
    for (int i = 0; i < 10; ++i) shapes.push_back(random_star(rng, 5 + i * 3));
    for (const Polygon& poly : shapes) {
        GeodesicContext ctx(poly);
        WeakGeodesics weak(poly);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = i + 1; j < poly.size(); ++j)
                CHECK(weak.distance(i, j) ==
                      Catch::Approx(ctx.corner_distance(i, j)).epsilon(1e-9));
        CHECK(weak.diameter() == Catch::Approx(ctx.geodesic_diameter()).epsilon(1e-9));
    }
}

TEST_CASE("weak geodesics on a weakly simple slit polygon") {
    // square with a zero-width vertical slit from the bottom edge to (1,1),
    // traversed by doubled edges
    Polygon p{{{0, 0}, {1, 0}, {1, 1}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}};
    CHECK(polygon_area(p) == Catch::Approx(4.0));
    WeakGeodesics weak(p);
    // nodes 1 and 3 are the two sides of the slit mouth: distance 0
    CHECK(weak.distance(1, 3) == Catch::Approx(0.0));
    // crossing the slit low requires going around the slit tip (1,1):
    // from (0.?) corner (0,0) to (2,0) the straight segment passes the slit
    // mouth where both slit sides coincide, so it is traversable
    CHECK(weak.distance(0, 4) == Catch::Approx(2.0));
    // diameter: between top corners and bottom, all visible in closure
    CHECK(weak.diameter() == Catch::Approx(std::sqrt(8.0)));
}

TEST_CASE("segment_in_closure handles slits") {
    Polygon p{{{0, 0}, {1, 0}, {1, 1}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}};
    // horizontal segment crossing the slit above the mouth but below the tip:
    // blocked? no — the slit is doubled, even-odd keeps midpoints inside
    CHECK(segment_in_closure(p, {0.5, 0.5}, {1.5, 0.5}));
    // segment dipping outside the bottom edge
    CHECK_FALSE(segment_in_closure(p, {0.5, 0.5}, {1.5, -0.5}));
    // along the boundary
    CHECK(segment_in_closure(p, {0, 0}, {2, 0}));
}
