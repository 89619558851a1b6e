#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polypart/boundary.hpp"
#include "polypart/convex.hpp"
#include "polypart/geodesic.hpp"
#include "polypart/interior.hpp"

using namespace polypart;
using namespace testutil;

namespace {

double measure(SizeKind kind, const Polygon& piece) {
    const auto& v = piece.vertices;
    switch (kind) {
    case SizeKind::AlignedSquare: {
        BoundingBox bb = bounding_box(v);
        return std::max(bb.width(), bb.height());
    }
    case SizeKind::RotatedSquare:
        return min_square_over_rotations(v).side;
    case SizeKind::Disk:
        return min_enclosing_disk(v).radius;
    case SizeKind::StraightDiameter:
        return straight_diameter(v);
    case SizeKind::GeodesicDiameter:
        return geodesic_diameter_weak(piece);
    case SizeKind::Perimeter:
        return perimeter(piece);
    }
    return 0.0;
}

BoundaryPartition fake_partition(std::initializer_list<Polygon> pieces) {
    BoundaryPartition bd;
    for (const Polygon& g : pieces) {
        BoundaryPiece p;
        p.geometry = g;
        bd.pieces.push_back(std::move(p));
    }
    return bd;
}

double total_area(const InteriorResult& r) {
    double a = 0.0;
    for (const auto& p : r.pieces) a += std::abs(signed_area(p.geometry));
    return a;
}

double covered_area(const BoundaryPartition& bd) {
    double a = 0.0;
    for (const auto& p : bd.pieces) a += std::abs(signed_area(p.geometry));
    return a;
}

} // namespace

TEST_CASE("interior boundary intervals on manufactured pieces") {
    SECTION("half piece exposes one interval") {
        Polygon P = rect(0, 0, 2, 2);
        auto bd = fake_partition({rect(0, 0, 2, 1)});
        auto ibis = compute_ibis(P, bd);
        REQUIRE(ibis.size() == 1);
        CHECK(ibis[0].owner == 0);
        CHECK(ibis[0].length == Catch::Approx(2.0));
        CHECK(ibis[0].chain.front() == Point{2, 1});
        CHECK(ibis[0].chain.back() == Point{0, 1});
    }
    SECTION("pieces covering everything leave no interval") {
        Polygon P = rect(0, 0, 2, 2);
        auto bd = fake_partition({rect(0, 0, 2, 1), rect(0, 1, 2, 2)});
        CHECK(compute_ibis(P, bd).empty());
    }
    SECTION("point contact splits an interval") {
        Polygon P = rect(0, 0, 4, 3);
        Polygon tri{{{1, 3}, {2, 1}, {3, 3}}};
        auto bd = fake_partition({rect(0, 0, 4, 1), tri});
        auto ibis = compute_ibis(P, bd);
        // bottom piece: top edge split at (2,1); triangle: two slanted edges
        REQUIRE(ibis.size() == 4);
        double bottom = 0.0, slanted = 0.0;
        for (const auto& ib : ibis)
            (ib.owner == 0 ? bottom : slanted) += ib.length;
        CHECK(bottom == Catch::Approx(4.0));
        CHECK(slanted == Catch::Approx(2.0 * std::sqrt(5.0)));
        for (const auto& ib : ibis)
            if (ib.owner == 0) CHECK(ib.length == Catch::Approx(2.0));
    }
    SECTION("interval total matches uncovered piece boundary on greedy output") {
        std::mt19937 rng(77);
        for (int it = 0; it < 6; ++it) {
            Polygon poly = random_star(rng, 10, 1.0, 2.5);
            SizeConstraint c{SizeKind::Disk, 1.0};
            BoundaryPartition bd = greedy_boundary(c, poly, default_start(poly));
            auto ibis = compute_ibis(poly, bd);
            CHECK(ibis.size() <= 3 * bd.pieces.size() - 6 + 6); // slack for tiny |Q|
            for (const auto& ib : ibis) {
                CHECK(ib.length > 0.0);
                // interval chains stay inside the polygon closure
                for (const Point& p : ib.chain) {
                    bool in = point_in_closure(poly, p);
                    if (!in)
                        for (std::size_t e = 0; e < poly.size() && !in; ++e)
                            in = point_segment_distance(p, poly.edge(e).a, poly.edge(e).b) < 1e-9;
                    CHECK(in);
                }
            }
        }
    }
}

TEST_CASE("fragment splitting") {
    SECTION("straight interval, delta 0.133") {
        InteriorBoundaryInterval ib;
        ib.chain = {{0, 0}, {0.5, 0}};
        ib.length = 0.5;
        auto frags = split_fragments({ib}, 0.133);
        REQUIRE(frags.size() == 4); // ceil(0.5 / 0.133)
        double total = 0.0;
        for (std::size_t k = 0; k < frags.size(); ++k) {
            total += frags[k].length;
            if (k + 1 < frags.size()) CHECK(frags[k].length == Catch::Approx(0.133));
            if (k > 0) CHECK(frags[k].chain.front() == frags[k - 1].chain.back());
        }
        CHECK(total == Catch::Approx(0.5));
        CHECK(frags.front().chain.front() == Point{0, 0});
        CHECK(frags.back().chain.back() == Point{0.5, 0});
    }
    SECTION("bent interval keeps every bend") {
        InteriorBoundaryInterval ib;
        ib.chain = {{0, 0}, {1, 0}, {1, 1}};
        ib.length = 2.0;
        auto frags = split_fragments({ib}, 0.75);
        REQUIRE(frags.size() == 3);
        CHECK(frags[1].chain.size() == 3); // crosses the corner (1,0)
        double total = 0.0;
        for (const auto& f : frags) total += f.length;
        CHECK(total == Catch::Approx(2.0));
    }
}

TEST_CASE("grid cell walk is conservative") {
    GridSpec grid;
    grid.cell = 1.0;
    grid.ox = -0.3;
    grid.oy = -0.7;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-4.0, 4.0);
    for (int it = 0; it < 200; ++it) {
        Point a{d(rng), d(rng)}, b{d(rng), d(rng)};
        std::unordered_set<std::uint64_t> cells;
        detail::walk_cells(grid, a, b, [&](long i, long j) {
            cells.insert(detail::cell_key(i, j));
        });
        // sample points along the segment must all land in stamped cells
        for (int s = 0; s <= 64; ++s) {
            Point p = lerp(a, b, double(s) / 64.0);
            CHECK(cells.count(detail::cell_key(grid.cell_ix(p.x), grid.cell_iy(p.y))) == 1);
        }
    }
}

TEST_CASE("interior pieces for square and disk kinds") {
    SECTION("big square, disk bound, no boundary pieces") {
        Polygon P = rect(0, 0, 10, 10);
        BoundaryPartition empty;
        SizeConstraint c{SizeKind::Disk, 1.0};
        InteriorResult r = interior_partition(P, empty, c, {});
        CHECK(total_area(r) == Catch::Approx(100.0).epsilon(1e-9));
        std::size_t complete = 0;
        for (const auto& p : r.pieces) {
            CHECK(measure(SizeKind::Disk, p.geometry) <= 1.0 + 1e-6);
            if (p.cls == PieceClass::Complete) {
                ++complete;
                CHECK(std::abs(signed_area(p.geometry)) == Catch::Approx(2.0));
            }
        }
        CHECK(complete >= 25); // at least (10/sqrt(2) - 2)^2 full cells
    }
    SECTION("aligned squares after greedy boundary on an L-shape") {
        Polygon P = ell(4.0);
        SizeConstraint c{SizeKind::AlignedSquare, 1.0};
        BoundaryPartition bd = greedy_boundary(c, P, default_start(P));
        InteriorResult r = interior_partition(P, bd, c, {});
        double area = polygon_area(P);
        CHECK(covered_area(bd) + total_area(r) == Catch::Approx(area).epsilon(1e-9));
        for (const auto& p : r.pieces)
            CHECK(measure(c.kind, p.geometry) <= c.bound + 1e-6);
    }
    SECTION("rotated squares on a random star") {
        std::mt19937 rng(31);
        Polygon P = random_star(rng, 12, 1.5, 3.0);
        SizeConstraint c{SizeKind::RotatedSquare, 1.0};
        BoundaryPartition bd = greedy_boundary(c, P, default_start(P));
        InteriorResult r = interior_partition(P, bd, c, {});
        CHECK(covered_area(bd) + total_area(r) == Catch::Approx(polygon_area(P)).epsilon(1e-9));
        for (const auto& p : r.pieces)
            CHECK(measure(c.kind, p.geometry) <= c.bound + 1e-6);
    }
}

TEST_CASE("geodesic-diameter interior pieces") {
    Polygon P = ell(4.0);
    SizeConstraint c{SizeKind::GeodesicDiameter, 1.0};
    BoundaryPartition bd = greedy_boundary(c, P, default_start(P));
    InteriorResult r = interior_partition(P, bd, c, {});

    REQUIRE_FALSE(r.ibis.empty());
    REQUIRE_FALSE(r.fragments.empty());
    REQUIRE_FALSE(r.subfields.empty());
    CHECK(covered_area(bd) + total_area(r) == Catch::Approx(polygon_area(P)).epsilon(1e-9));
    for (const auto& p : r.pieces)
        CHECK(measure(c.kind, p.geometry) <= c.bound * (1.0 + 1e-6));

    // fragment bookkeeping
    double delta = fragment_delta(c.kind) * c.bound;
    double ibi_len = 0.0;
    for (const auto& ib : r.ibis) ibi_len += ib.length;
    CHECK(double(r.fragments.size()) <= double(r.ibis.size()) + ibi_len / delta + 1e-9);
    for (const auto& f : r.fragments) CHECK(f.length <= delta * (1.0 + 1e-9));

    // subfields stay small: geodesic diameter at most (2 + sqrt(2)) * gamma
    double cap = (2.0 + std::sqrt(2.0)) * grid_gamma(c.kind) * c.bound + 1e-6;
    for (const Polygon& s : r.subfields)
        CHECK(geodesic_diameter_weak(s) <= cap);
}

TEST_CASE("perimeter interior pieces") {
    Polygon P = rect(0, 0, 1, 1);
    SizeConstraint c{SizeKind::Perimeter, 2.0};
    BoundaryPartition bd = greedy_boundary(c, P, default_start(P));
    InteriorResult r = interior_partition(P, bd, c, {});
    REQUIRE_FALSE(r.pieces.empty());
    CHECK(covered_area(bd) + total_area(r) == Catch::Approx(1.0).epsilon(1e-8));
    std::size_t complete = 0;
    for (const auto& p : r.pieces) {
        CHECK(measure(c.kind, p.geometry) <= c.bound * (1.0 + 1e-6));
        if (p.cls == PieceClass::Complete) ++complete;
    }
    CHECK(complete > 1000); // banded mode: most of the square is full cells
}

TEST_CASE("interior parameter validation") {
    CHECK(interior_params_valid(SizeKind::GeodesicDiameter, 0.127, 0.1327));
    CHECK_FALSE(interior_params_valid(SizeKind::GeodesicDiameter, 0.127, 0.133));
    CHECK_FALSE(interior_params_valid(SizeKind::GeodesicDiameter, 0.2, 0.133));
    CHECK(interior_params_valid(SizeKind::Perimeter, 0.00490, 0.00243));
    CHECK_FALSE(interior_params_valid(SizeKind::Perimeter, 0.006, 0.00243));
    CHECK(interior_params_valid(SizeKind::Disk, 1.4142, 0.0));
}
