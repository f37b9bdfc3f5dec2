#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sdclip/geometry.hpp"
#include "sdclip/workload.hpp"
#include "test_support.hpp"

using namespace sdclip;

TEST_CASE("vector helpers") {
    const Point2 a{1.0, 2.0}, b{3.0, -4.0};
    CHECK((a + b).x == 4.0);
    CHECK((a - b).y == 6.0);
    CHECK((2.0 * a).y == 4.0);
    CHECK(dot(a, b) == -5.0);
    CHECK(cross(a, b) == -10.0);
    CHECK(norm(Point2{3.0, 4.0}) == 5.0);

    const Point3 u{1.0, 0.0, 0.0}, v{0.0, 1.0, 0.0};
    const Point3 w = cross(u, v);
    CHECK(w.x == 0.0);
    CHECK(w.y == 0.0);
    CHECK(w.z == 1.0);
    CHECK(dot(u, v) == 0.0);
}

TEST_CASE("to_semidual picks the shallow branch") {
    const LineRep horizontal = to_semidual({-5.0, 0.0}, {5.0, 0.0});
    CHECK(horizontal.branch == Branch::KQ);
    CHECK(horizontal.slope == 0.0);
    CHECK(horizontal.intercept == 0.0);

    const LineRep vertical = to_semidual({0.0, -5.0}, {0.0, 5.0});
    CHECK(vertical.branch == Branch::MP);
    CHECK(vertical.slope == 0.0);
    CHECK(vertical.intercept == 0.0);

    const LineRep steep = to_semidual({0.0, 0.0}, {1.0, 2.0});
    CHECK(steep.branch == Branch::MP);
    CHECK(steep.slope == 0.5);
    CHECK(steep.intercept == 0.0);
}

TEST_CASE("to_semidual ties |dx| = |dy| go to KQ") {
    const LineRep diag = to_semidual({0.0, 0.0}, {1.0, 1.0});
    CHECK(diag.branch == Branch::KQ);
    CHECK(diag.slope == 1.0);
    CHECK(diag.intercept == 0.0);
}

TEST_CASE("to_semidual rejects a zero-length segment") {
    CHECK_THROWS_AS(to_semidual({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("to_semidual satisfies the line equation with bounded slope") {
    Rng rng(11);
    for (int it = 0; it < 2000; ++it) {
        const Point2 p0{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        Point2 p1{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        if (p0.x == p1.x && p0.y == p1.y) p1.x += 1.0;
        const LineRep rep = to_semidual(p0, p1);
        CHECK(std::abs(rep.slope) <= 1.0);
        for (const Point2& p : {p0, p1}) {
            const double resid = rep.branch == Branch::KQ
                                     ? p.y - (rep.slope * p.x + rep.intercept)
                                     : p.x - (rep.slope * p.y + rep.intercept);
            CHECK(std::abs(resid) <= 1e-9 * (1.0 + std::abs(rep.intercept) + 40.0));
        }
    }
}

TEST_CASE("project_point drops one coordinate") {
    const Point3 p{1.0, 2.0, 3.0};
    CHECK(project_point(p, Plane::XY).x == 1.0);
    CHECK(project_point(p, Plane::XY).y == 2.0);
    CHECK(project_point(p, Plane::XZ).x == 1.0);
    CHECK(project_point(p, Plane::XZ).y == 3.0);
    CHECK(project_point(p, Plane::YZ).x == 2.0);
    CHECK(project_point(p, Plane::YZ).y == 3.0);

    const Segment3 s{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
    const Segment2 sxz = project_segment(s, Plane::XZ);
    CHECK(sxz.p0.y == 3.0);
    CHECK(sxz.p1.x == 4.0);
    CHECK(sxz.p1.y == 6.0);
}

TEST_CASE("clip results") {
    const ClipResult e = ClipResult::empty();
    CHECK(e.is_empty());
    const ClipResult iv = ClipResult::interval(0.25, 0.75);
    CHECK(!iv.is_empty());
    CHECK(iv.t_enter == 0.25);
    CHECK(iv.t_exit == 0.75);
}

TEST_CASE("geometric tolerance scales with the diameter") {
    CHECK(eps_geom(0.0) == 1e-9);
    CHECK(eps_geom(9.0) == 1e-8);
    BoundingBox2 box;
    box.half_x = 3.0;
    box.half_y = 4.0;
    CHECK(diameter(box) == 10.0);
}

TEST_CASE("result comparison allows a degenerate-interval tangency") {
    using testsupport::results_equal;
    const ClipResult a = ClipResult::interval(0.5, 0.5 + 5e-10);
    CHECK(results_equal(a, ClipResult::empty(), 1e-9));
    CHECK(results_equal(ClipResult::empty(), a, 1e-9));
    CHECK(!results_equal(ClipResult::interval(0.2, 0.8), ClipResult::empty(), 1e-9));
    CHECK(results_equal(ClipResult::interval(0.2, 0.8),
                        ClipResult::interval(0.2 + 1e-10, 0.8 - 1e-10), 1e-9));
    CHECK(!results_equal(ClipResult::interval(0.2, 0.8),
                         ClipResult::interval(0.2, 0.81), 1e-9));
}
