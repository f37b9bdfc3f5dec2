#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sdclip/geometry.hpp"
#include "sdclip/polygon.hpp"
#include "sdclip/workload.hpp"
#include "test_support.hpp"

using namespace sdclip;
using testsupport::make_cube;
using testsupport::make_square;
using testsupport::make_tetrahedron;

TEST_CASE("polygon construction validates strict convexity") {
    CHECK_NOTHROW(ConvexPolygon::from_vertices({{0, 0}, {4, 0}, {0, 2}}));
    // CW order
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {0, 2}, {4, 0}}),
                    std::invalid_argument);
    // collinear vertex
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {2, 0}, {4, 0}, {0, 2}}),
                    std::invalid_argument);
    // repeated vertex
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {4, 0}, {4, 0}, {0, 2}}),
                    std::invalid_argument);
    // too few
    CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0, 0}, {4, 0}}),
                    std::invalid_argument);
    // non-finite
    CHECK_THROWS_AS(
        ConvexPolygon::from_vertices({{0, 0}, {4, 0}, {0, std::nan("")}}),
        std::invalid_argument);
}

TEST_CASE("polygon edges and outward normals") {
    const ConvexPolygon sq = make_square(1.0);
    CHECK(sq.size() == 4);
    CHECK(sq.edge_start(3).x == -1.0);
    CHECK(sq.edge_end(3).x == -1.0);
    CHECK(sq.edge_end(3).y == -1.0);  // wraps to vertex 0
    for (std::size_t e = 0; e < sq.size(); ++e) {
        const Point2 n = sq.edge_normal(e);
        CHECK(std::abs(norm(n) - 1.0) <= 1e-15);
        // outward: points away from the center
        const Point2 mid = 0.5 * (sq.edge_start(e) + sq.edge_end(e));
        CHECK(dot(n, mid) > 0.0);
    }
}

TEST_CASE("polygon containment") {
    const ConvexPolygon sq = make_square(1.0);
    CHECK(sq.contains({0.0, 0.0}, 0.0));
    CHECK(sq.contains({1.0, 1.0}, 1e-12));
    CHECK(sq.contains({1.0 + 1e-12, 0.0}, 1e-9));
    CHECK(!sq.contains({1.1, 0.0}, 1e-9));
    CHECK(!sq.contains({2.0, 2.0}, 1e-9));
}

TEST_CASE("bounding box of the unit square") {
    const BoundingBox2 box = bounding_box(make_square(1.0));
    CHECK(box.center.x == 0.0);
    CHECK(box.center.y == 0.0);
    CHECK(box.half_x == 1.0);
    CHECK(box.half_y == 1.0);
    CHECK(box.h == 2.0);
}

TEST_CASE("bounding box of an offset triangle") {
    const ConvexPolygon tri = ConvexPolygon::from_vertices({{0, 0}, {4, 0}, {0, 2}});
    const BoundingBox2 box = bounding_box(tri);
    CHECK(box.center.x == 2.0);
    CHECK(box.center.y == 1.0);
    CHECK(box.half_x == 2.0);
    CHECK(box.half_y == 1.0);
    CHECK(box.h == 3.0);
}

TEST_CASE("every line meeting the box has box-frame |intercept| <= h") {
    const ConvexPolygon tri = ConvexPolygon::from_vertices({{0, 0}, {4, 0}, {0, 2}});
    const BoundingBox2 box = bounding_box(tri);
    Rng rng(17);
    for (int it = 0; it < 10000; ++it) {
        const Point2 a{rng.uniform(-box.half_x, box.half_x),
                       rng.uniform(-box.half_y, box.half_y)};
        Point2 b{rng.uniform(-box.half_x, box.half_x),
                 rng.uniform(-box.half_y, box.half_y)};
        if (a.x == b.x && a.y == b.y) b.x += box.half_x * 0.5;
        const LineRep rep = to_semidual(a, b);  // already box-centered
        CHECK(std::abs(rep.intercept) <= box.h + 1e-12);
    }
}

TEST_CASE("polyhedron construction validates the surface") {
    const ConvexPolyhedron cube = make_cube(1.0);
    CHECK(cube.vertex_count() == 8);
    CHECK(cube.facet_count() == 12);

    const ConvexPolyhedron tet = make_tetrahedron(1.0);
    CHECK(tet.vertex_count() == 4);
    CHECK(tet.facet_count() == 4);

    // a flipped facet breaks orientability
    {
        auto v = cube.vertices();
        auto f = cube.facets();
        std::swap(f[0][1], f[0][2]);
        CHECK_THROWS_AS(ConvexPolyhedron::from_data(v, f), std::invalid_argument);
    }
    // a missing facet breaks closedness
    {
        auto v = cube.vertices();
        auto f = cube.facets();
        f.pop_back();
        CHECK_THROWS_AS(ConvexPolyhedron::from_data(v, f), std::invalid_argument);
    }
    // a vertex pulled outward breaks convexity
    {
        auto v = cube.vertices();
        auto f = cube.facets();
        v[6] = {3.0, 3.0, 3.0};
        CHECK_THROWS_AS(ConvexPolyhedron::from_data(v, f), std::invalid_argument);
    }
    // an out-of-range index
    {
        auto v = cube.vertices();
        auto f = cube.facets();
        f[0][0] = 99;
        CHECK_THROWS_AS(ConvexPolyhedron::from_data(v, f), std::invalid_argument);
    }
}

TEST_CASE("polyhedron normals are outward unit vectors") {
    const ConvexPolyhedron cube = make_cube(2.0);
    for (std::size_t f = 0; f < cube.facet_count(); ++f) {
        const Point3 n = cube.facet_normal(f);
        CHECK(std::abs(norm(n) - 1.0) <= 1e-12);
        const Point3 c = (1.0 / 3.0) * (cube.facet_vertex(f, 0) +
                                        cube.facet_vertex(f, 1) +
                                        cube.facet_vertex(f, 2));
        CHECK(dot(n, c) > 0.0);
    }
}

TEST_CASE("polyhedron containment") {
    const ConvexPolyhedron cube = make_cube(1.0);
    CHECK(cube.contains({0.0, 0.0, 0.0}, 0.0));
    CHECK(cube.contains({1.0, 1.0, 1.0}, 1e-12));
    CHECK(!cube.contains({1.2, 0.0, 0.0}, 1e-9));
}

TEST_CASE("projected bounding boxes of a cube") {
    const ConvexPolyhedron cube = make_cube(1.0);
    for (const Plane plane : {Plane::XY, Plane::XZ, Plane::YZ}) {
        const BoundingBox2 box = projected_bounding_box(cube, plane);
        CHECK(box.center.x == 0.0);
        CHECK(box.center.y == 0.0);
        CHECK(box.half_x == 1.0);
        CHECK(box.half_y == 1.0);
        CHECK(box.h == 2.0);
    }
}
