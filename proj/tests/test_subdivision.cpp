#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "polypart/subdivision.hpp"

using namespace polypart;
using namespace testutil;

namespace {

double total_region_area(const PlanarSubdivision& sub, std::uint32_t r) {
    double a = 0.0;
    for (const auto& f : sub.faces)
        if (!f.unbounded && f.in_region(r)) a += f.area;
    return a;
}

} // namespace

TEST_CASE("overlay of two overlapping squares") {
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 2, 2));
    in.regions.push_back(rect(1, 1, 3, 3));
    auto sub = overlay(in);

    // three bounded faces: A-only, B-only, A-and-B
    std::size_t bounded = 0;
    for (const auto& f : sub.faces)
        if (!f.unbounded) ++bounded;
    CHECK(bounded == 3);
    CHECK(total_region_area(sub, 0) == Catch::Approx(4.0));
    CHECK(total_region_area(sub, 1) == Catch::Approx(4.0));

    double both = 0.0;
    for (const auto& f : sub.faces)
        if (!f.unbounded && f.in_region(0) && f.in_region(1)) both += f.area;
    CHECK(both == Catch::Approx(1.0));
}

TEST_CASE("overlay with a contained hole region") {
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 4, 4));
    in.regions.push_back(rect(1, 1, 2, 2));
    auto sub = overlay(in);
    // outer face, annulus (region 0 only), inner square (both)
    double only_outer = 0.0, both = 0.0;
    for (const auto& f : sub.faces) {
        if (f.unbounded) continue;
        if (f.in_region(0) && f.in_region(1)) both += f.area;
        else if (f.in_region(0)) only_outer += f.area;
    }
    CHECK(both == Catch::Approx(1.0));
    CHECK(only_outer == Catch::Approx(15.0));
    // the annulus face has a hole contour
    bool found_hole = false;
    for (const auto& f : sub.faces)
        if (!f.unbounded && !f.inner.empty()) found_hole = true;
    CHECK(found_hole);
}

TEST_CASE("overlay with grid lines cuts cells") {
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 3, 2));
    in.vertical_lines = {1.0, 2.0};
    in.horizontal_lines = {1.0};
    auto sub = overlay(in);
    std::size_t cells = 0;
    for (const auto& f : sub.faces)
        if (!f.unbounded && f.in_region(0)) {
            ++cells;
            CHECK(f.area == Catch::Approx(1.0));
        }
    CHECK(cells == 6);
    CHECK(total_region_area(sub, 0) == Catch::Approx(6.0));
}

TEST_CASE("face samples lie in their face") {
    std::mt19937 rng(67);
    OverlayInput in;
    in.regions.push_back(random_star(rng, 12));
    in.regions.push_back(random_star(rng, 9, 0.4, 1.5, {0.5, 0.3}));
    in.vertical_lines = {-0.5, 0.0, 0.5};
    in.horizontal_lines = {-0.3, 0.4};
    auto sub = overlay(in);
    double total = 0.0;
    for (std::uint32_t f = 0; f < sub.faces.size(); ++f) {
        if (sub.faces[f].unbounded) continue;
        total += sub.faces[f].area;
        Point s = sub.face_sample(f);
        CHECK(sub.locate(s) == f);
        // parity label agrees with a direct point test
        for (std::uint32_t r = 0; r < 2; ++r)
            CHECK(sub.faces[f].in_region(r) ==
                  (point_in_polygon(in.regions[r], s) == PointLocation::Inside));
    }
    // bounded faces tile the union of everything drawn, so region areas match
    for (std::uint32_t r = 0; r < 2; ++r)
        CHECK(total_region_area(sub, r) == Catch::Approx(polygon_area(in.regions[r])));
    (void)total;
}

TEST_CASE("weakly simple region with a doubled spike") {
    // square with a zero-area spike: the doubled edge must not affect parity
    Polygon spiked{{{0, 0}, {1, 0}, {1, 0.5}, {1.5, 0.5}, {1, 0.5}, {1, 1}, {0, 1}}};
    OverlayInput in;
    in.regions.push_back(spiked);
    auto sub = overlay(in);
    CHECK(total_region_area(sub, 0) == Catch::Approx(1.0));
}

TEST_CASE("trace_union reproduces a region") {
    OverlayInput in;
    in.regions.push_back(ell(2.0));
    in.vertical_lines = {0.5, 1.0};
    in.horizontal_lines = {0.5};
    auto sub = overlay(in);
    std::vector<std::uint32_t> set;
    for (std::uint32_t f = 0; f < sub.faces.size(); ++f)
        if (!sub.faces[f].unbounded && sub.faces[f].in_region(0)) set.push_back(f);
    Polygon u = sub.trace_union(set);
    CHECK(polygon_area(u) == Catch::Approx(polygon_area(ell(2.0))));
    // every input corner appears on the traced boundary
    for (const Point& v : ell(2.0).vertices) {
        bool found = false;
        for (const Point& w : u.vertices)
            if (v == w) found = true;
        CHECK(found);
    }
}

TEST_CASE("trace_union of a subset of faces") {
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 2, 1));
    in.vertical_lines = {1.0};
    auto sub = overlay(in);
    // take only the left cell
    std::vector<std::uint32_t> set;
    for (std::uint32_t f = 0; f < sub.faces.size(); ++f) {
        if (sub.faces[f].unbounded || !sub.faces[f].in_region(0)) continue;
        Point s = sub.face_sample(f);
        if (s.x < 1.0) set.push_back(f);
    }
    REQUIRE(set.size() == 1);
    Polygon u = sub.trace_union(set);
    CHECK(polygon_area(u) == Catch::Approx(1.0));
}

TEST_CASE("trace_union bridges a hole") {
    // annulus: 4x4 square minus 1x1 inner square, as the set of faces of an
    // overlay of the two rectangles that are in region 0 but not region 1
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 4, 4));
    in.regions.push_back(rect(1, 1, 2, 2));
    auto sub = overlay(in);
    std::vector<std::uint32_t> set;
    for (std::uint32_t f = 0; f < sub.faces.size(); ++f)
        if (!sub.faces[f].unbounded && sub.faces[f].in_region(0) && !sub.faces[f].in_region(1))
            set.push_back(f);
    Polygon u = sub.trace_union(set);
    // doubled bridge: area still the annulus area
    CHECK(polygon_area(u) == Catch::Approx(15.0));
}

TEST_CASE("overlay collinear overlapping edges merge with correct parity") {
    // two side-by-side squares sharing an edge
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 1, 1));
    in.regions.push_back(rect(1, 0, 2, 1));
    auto sub = overlay(in);
    CHECK(total_region_area(sub, 0) == Catch::Approx(1.0));
    CHECK(total_region_area(sub, 1) == Catch::Approx(1.0));
    // no face is in both regions
    for (const auto& f : sub.faces)
        CHECK_FALSE((f.in_region(0) && f.in_region(1)));
}

TEST_CASE("overlay partial collinear overlap") {
    OverlayInput in;
    in.regions.push_back(rect(0, 0, 2, 1));
    in.regions.push_back(rect(1, 1, 3, 2)); // bottom edge overlaps top edge on [1,2]
    auto sub = overlay(in);
    CHECK(total_region_area(sub, 0) == Catch::Approx(2.0));
    CHECK(total_region_area(sub, 1) == Catch::Approx(2.0));
}

TEST_CASE("empty overlay") {
    auto sub = overlay({});
    CHECK(sub.faces.size() == 1);
    CHECK(sub.faces[0].unbounded);
}
