#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdclip/oracle.hpp"
#include "sdclip/semidual3.hpp"
#include "sdclip/workload.hpp"
#include "test_support.hpp"

using namespace sdclip;
using testsupport::line_crosses_edge;
using testsupport::line_hits_triangle;
using testsupport::make_cube;
using testsupport::make_tetrahedron;
using testsupport::results_equal;

TEST_CASE("facet bitmaps") {
    FacetBitmap a = FacetBitmap::zeros(130);
    CHECK(a.words.size() == 3);
    CHECK(a.popcount() == 0);
    a.set(0);
    a.set(63);
    a.set(64);
    a.set(129);
    CHECK(a.popcount() == 4);
    CHECK(a.test(63));
    CHECK(!a.test(62));

    // 1011 & 0110 == 0010
    FacetBitmap x = FacetBitmap::zeros(4);
    x.set(0);
    x.set(1);
    x.set(3);
    FacetBitmap y = FacetBitmap::zeros(4);
    y.set(1);
    y.set(2);
    const FacetBitmap z = x & y;
    CHECK(z.popcount() == 1);
    CHECK(z.test(1));

    // AND is commutative and idempotent, popcount never grows
    const FacetBitmap zr = y & x;
    CHECK(z.words == zr.words);
    const FacetBitmap xx = x & x;
    CHECK(xx.words == x.words);
    CHECK(z.popcount() <= std::min(x.popcount(), y.popcount()));

    FacetBitmap other = FacetBitmap::zeros(65);
    CHECK_THROWS_AS((void)(x & other), std::logic_error);

    std::vector<std::uint32_t> seen;
    a.for_each_set([&](std::uint32_t bit) { seen.push_back(bit); });
    CHECK(seen == std::vector<std::uint32_t>{0, 63, 64, 129});
}

TEST_CASE("plane selection follows the dominant axis") {
    const PlaneSelection sx = select_planes({1.0, 0.2, 0.1});
    CHECK(sx.first == Plane::XY);
    CHECK(sx.second == Plane::XZ);

    const PlaneSelection sy = select_planes({0.1, 1.0, 0.2});
    CHECK(sy.first == Plane::XY);
    CHECK(sy.second == Plane::YZ);

    const PlaneSelection sz = select_planes({0.0, 0.0, 1.0});
    CHECK(sz.first == Plane::XZ);
    CHECK(sz.second == Plane::YZ);

    // ties prefer x over y over z
    const PlaneSelection tie = select_planes({1.0, 1.0, 1.0});
    CHECK(tie.first == Plane::XY);
    CHECK(tie.second == Plane::XZ);
    const PlaneSelection tie_yz = select_planes({0.0, 2.0, 2.0});
    CHECK(tie_yz.first == Plane::XY);
    CHECK(tie_yz.second == Plane::YZ);

    CHECK_THROWS_AS(select_planes({0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("plane selection is invariant under positive scaling") {
    Rng rng(31);
    for (int it = 0; it < 500; ++it) {
        const Point3 d{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                       rng.uniform(-1.0, 1.0)};
        if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) continue;
        const PlaneSelection base = select_planes(d);
        for (const double s : {0.001, 7.0, 1e6}) {
            const PlaneSelection scaled = select_planes(s * d);
            CHECK(scaled.first == base.first);
            CHECK(scaled.second == base.second);
        }
    }
}

TEST_CASE("facet interference against projected cells") {
    const ConvexPolyhedron cube = make_cube(1.0);
    const BoundingBox2 box = projected_bounding_box(cube, Plane::XY);
    // a top facet projects onto a triangle covering half the square
    std::uint32_t top = 0;
    for (std::uint32_t f = 0; f < cube.facet_count(); ++f) {
        if (cube.facet_normal(f).z > 0.9) top = f;
    }
    const CellRect near_cell{-0.05, 0.05, -0.55, -0.45};
    CHECK(facet_interferes_cell(cube, top, Plane::XY, near_cell, Branch::KQ, box,
                                cube.eps()));
    const CellRect far_cell{-0.05, 0.05, 1.9, 1.95};
    CHECK(!facet_interferes_cell(cube, top, Plane::XY, far_cell, Branch::KQ, box,
                                 cube.eps()));
}

TEST_CASE("facet interference never misses a sampled crossing line") {
    const ConvexPolyhedron hull = gen_convex_polyhedron(60, 33, 10.0);
    Rng rng(34);
    const Plane planes[3] = {Plane::XY, Plane::XZ, Plane::YZ};
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        const Plane plane = planes[it % 3];
        const Branch branch = (it % 2 == 0) ? Branch::KQ : Branch::MP;
        const BoundingBox2 box = projected_bounding_box(hull, plane);
        const std::uint32_t f =
            static_cast<std::uint32_t>(rng.below(hull.facet_count()));
        const double s0 = rng.uniform(-1.0, 0.98);
        const double q0 = rng.uniform(-box.h, box.h * 0.95);
        const CellRect cell{s0, s0 + 0.02, q0, q0 + box.h * 0.02};
        if (facet_interferes_cell(hull, f, plane, cell, branch, box, hull.eps())) {
            continue;
        }
        Point2 tri[3];
        for (int c = 0; c < 3; ++c) {
            tri[c] = project_point(hull.facet_vertex(f, c), plane) - box.center;
        }
        for (int ls = 0; ls < 10; ++ls) {
            const double s = rng.uniform(cell.slope_lo, cell.slope_hi);
            const double q = rng.uniform(cell.intercept_lo, cell.intercept_hi);
            const Segment2 carrier = branch == Branch::KQ
                                         ? Segment2{{-1.0, -s + q}, {1.0, s + q}}
                                         : Segment2{{-s + q, -1.0}, {s + q, 1.0}};
            const bool crosses = line_crosses_edge(carrier, tri[0], tri[1]) ||
                                 line_crosses_edge(carrier, tri[1], tri[2]) ||
                                 line_crosses_edge(carrier, tri[2], tri[0]);
            REQUIRE(!crosses);
            ++checked;
        }
    }
    CHECK(checked > 1000);  // the filter must leave real work
}

TEST_CASE("a 1x1 grid holds every facet of a tetrahedron") {
    const ConvexPolyhedron tet = make_tetrahedron(2.0);
    const SemidualClipper3D clipper = build_clipper_3d(tet, 1, 1, 1, 1);
    for (const PlaneData& pd : clipper.planes) {
        for (const AflGrid* grid : {&pd.grid_kq, &pd.grid_mp}) {
            const FacetBitmap bm = grid->cell_bitmap(0, 0);
            CHECK(bm.nbits == 4);
            CHECK(bm.popcount() == 4);
        }
    }
    const AflStatistics stats = afl_statistics(clipper, {});
    for (const AflGridStats& gs : stats.grids) {
        CHECK(gs.mean_popcount == 4.0);
        CHECK(gs.max_popcount == 4);
    }
}

TEST_CASE("grid build rejects bad parameters") {
    const ConvexPolyhedron tet = make_tetrahedron(2.0);
    CHECK_THROWS_AS(build_clipper_3d(tet, 0, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_clipper_3d(tet, 600, 600, 1, 1, 1 << 22),
                         "subdivision too fine", std::runtime_error);
}

TEST_CASE("stored bitmaps equal a direct per-cell interference scan") {
    const ConvexPolyhedron hull = gen_convex_polyhedron(24, 35, 10.0);
    const SemidualClipper3D clipper = build_clipper_3d(hull, 6, 12, 6, 12);
    for (const PlaneData& pd : clipper.planes) {
        for (const AflGrid* grid : {&pd.grid_kq, &pd.grid_mp}) {
            for (int i = 0; i < grid->n_intercept; ++i) {
                for (int j = 0; j < grid->n_slope; ++j) {
                    const FacetBitmap bm = grid->cell_bitmap(i, j);
                    const CellRect rect = grid->cell_rect(i, j);
                    for (std::uint32_t f = 0; f < hull.facet_count(); ++f) {
                        const bool expect = facet_interferes_cell(
                            hull, f, pd.plane, rect, grid->branch, pd.box,
                            hull.eps());
                        REQUIRE(bm.test(f) == expect);
                    }
                }
            }
        }
    }
}

TEST_CASE("grid refinement never grows a covering cell's bitmap") {
    const ConvexPolyhedron cube = make_cube(1.0);
    const SemidualClipper3D coarse = build_clipper_3d(cube, 4, 4, 4, 4);
    const SemidualClipper3D fine = build_clipper_3d(cube, 8, 8, 8, 8);
    for (int p = 0; p < 3; ++p) {
        const auto check_nested = [&](const AflGrid& parent, const AflGrid& child) {
            for (int i = 0; i < child.n_intercept; ++i) {
                for (int j = 0; j < child.n_slope; ++j) {
                    const FacetBitmap small = child.cell_bitmap(i, j);
                    const FacetBitmap big = parent.cell_bitmap(i / 2, j / 2);
                    CHECK(small.popcount() <= 12);
                    const FacetBitmap meet = small & big;
                    REQUIRE(meet.words == small.words);
                }
            }
        };
        check_nested(coarse.planes[p].grid_kq, fine.planes[p].grid_kq);
        check_nested(coarse.planes[p].grid_mp, fine.planes[p].grid_mp);
    }
}

TEST_CASE("detail test intersects the carrier with one facet") {
    const ConvexPolyhedron cube = make_cube(1.0);
    const Segment3 through{{0.0, 0.0, -2.0}, {0.0, 0.0, 2.0}};
    const Segment3 outside{{5.0, 5.0, -2.0}, {5.0, 5.0, 2.0}};
    int top_hits = 0;
    for (std::uint32_t f = 0; f < cube.facet_count(); ++f) {
        if (cube.facet_normal(f).z > 0.9) {
            const auto t = detail_test(cube, f, through);
            REQUIRE(t.has_value());
            CHECK(*t == doctest::Approx(0.75).epsilon(1e-12));
            CHECK(!detail_test(cube, f, outside).has_value());
            ++top_hits;
        }
    }
    CHECK(top_hits == 2);
}

TEST_CASE("detail test matches the independent triangle oracle") {
    const ConvexPolyhedron hull = gen_convex_polyhedron(60, 36, 10.0);
    Rng rng(37);
    int hits = 0, misses = 0;
    for (int it = 0; it < 4000; ++it) {
        const std::uint32_t f =
            static_cast<std::uint32_t>(rng.below(hull.facet_count()));
        const Point3 v0 = hull.facet_vertex(f, 0);
        const Point3 v1 = hull.facet_vertex(f, 1);
        const Point3 v2 = hull.facet_vertex(f, 2);
        // aim at a strictly interior point of the triangle
        const double u = rng.uniform(0.1, 0.45);
        const double v = rng.uniform(0.1, 0.45);
        const Point3 target = v0 + u * (v1 - v0) + v * (v2 - v0);
        Point3 d{rng.gauss(), rng.gauss(), rng.gauss()};
        const double dn = norm(d);
        if (dn < 1e-6) continue;
        d = (1.0 / dn) * d;
        if (std::abs(dot(d, hull.facet_normal(f))) < 0.1) continue;  // skip grazing
        const Segment3 seg{target - 25.0 * d, target + 5.0 * d};
        const auto got = detail_test(hull, f, seg);
        const auto want = line_hits_triangle(seg, v0, v1, v2, 1e-12);
        REQUIRE(got.has_value());
        REQUIRE(want.has_value());
        CHECK(std::abs(*got - *want) <= 1e-9);
        ++hits;

        // retarget far outside the facet plane's triangle
        const Point3 away = v0 + 4.0 * (v1 - v0) + 4.0 * (v2 - v0);
        const Segment3 miss{away - 25.0 * d, away + 5.0 * d};
        if (!line_hits_triangle(miss, v0, v1, v2, 1e-3).has_value()) {
            CHECK(!detail_test(hull, f, miss).has_value());
            ++misses;
        }
    }
    CHECK(hits > 3000);
    CHECK(misses > 1000);
}

TEST_CASE("candidate sets are conservative and misses are proven") {
    const ConvexPolyhedron hull = gen_convex_polyhedron(60, 38, 10.0);
    const SemidualClipper3D clipper = build_clipper_3d(hull, 8, 8, 8, 8);
    const std::vector<Segment3> lines = gen_lines(hull, 1000, 0.5, 39);
    int proven_misses = 0;
    for (const Segment3& seg : lines) {
        const auto cand = candidate_facets(clipper, seg);
        for (std::uint32_t f = 0; f < hull.facet_count(); ++f) {
            const auto t = line_hits_triangle(seg, hull.facet_vertex(f, 0),
                                              hull.facet_vertex(f, 1),
                                              hull.facet_vertex(f, 2), 1e-12);
            if (!t) continue;
            REQUIRE(cand.has_value());
            REQUIRE(cand->test(f));
        }
        if (!cand) ++proven_misses;
    }
    CHECK(proven_misses > 0);  // far misses must exercise the range rejection
}

TEST_CASE("a line outside the projected silhouette is rejected by range") {
    const ConvexPolyhedron cube = make_cube(1.0);
    const SemidualClipper3D clipper = build_clipper_3d(cube, 4, 4, 4, 4);
    const Segment3 far{{5.0, 5.0, -2.0}, {5.0, 6.0, 2.0}};
    CHECK(!candidate_facets(clipper, far).has_value());
    CHECK(clip_o1_3d(clipper, far).is_empty());
}

TEST_CASE("constant-time clipper matches the cube examples") {
    const ConvexPolyhedron cube = make_cube(1.0);
    const SemidualClipper3D clipper = build_clipper_3d(cube, 4, 4, 4, 4);
    const ClipResult r = clip_o1_3d(clipper, {{-2.0, 0.1, 0.1}, {2.0, 0.1, 0.1}});
    REQUIRE(!r.is_empty());
    CHECK(r.t_enter == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.t_exit == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("constant-time clipper matches the oracle on random workloads") {
    for (const int f : {4, 12, 60}) {
        const ConvexPolyhedron hull = gen_convex_polyhedron(f, 400 + f, 10.0);
        const SemidualClipper3D clipper = build_clipper_3d(hull, 10, 10, 10, 10);
        const std::vector<Segment3> lines = gen_lines(hull, 10000, 0.5, 401 + f);
        for (const Segment3& seg : lines) {
            REQUIRE(results_equal(clip_o1_3d(clipper, seg),
                                  clip_halfspace_oracle(hull, seg), 1e-9));
        }
    }
}

TEST_CASE("fetched-bitmap statistics shrink under refinement") {
    const ConvexPolyhedron hull = gen_convex_polyhedron(60, 42, 10.0);
    const std::vector<Segment3> lines = gen_lines(hull, 500, 1.0, 43);
    const SemidualClipper3D coarse = build_clipper_3d(hull, 5, 5, 5, 5);
    const SemidualClipper3D fine = build_clipper_3d(hull, 10, 10, 10, 10);
    const AflStatistics sa = afl_statistics(coarse, lines);
    const AflStatistics sb = afl_statistics(fine, lines);
    CHECK(sa.sampled_lines == 500);
    CHECK(sb.sampled_lines == 500);
    CHECK(sa.misses == 0);  // hitting lines are always in range
    CHECK(sb.mean_before_intersection <= sa.mean_before_intersection + 1e-12);
    CHECK(sb.mean_after_intersection <= sa.mean_after_intersection + 1e-12);
    CHECK(sa.mean_after_intersection <= sa.mean_before_intersection + 1e-12);
    for (int g = 0; g < 6; ++g) {
        CHECK(sb.grids[g].mean_popcount <= sa.grids[g].mean_popcount + 1e-12);
    }
}
