#include "sdclip/polygon.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace sdclip {

namespace {

bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool finite(const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point2> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices");
    }
    for (const Point2& v : vertices) {
        if (!finite(v)) throw std::invalid_argument("polygon vertex not finite");
    }
    // strict convexity forces CCW order and rules out repeats and collinearity
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e0 = vertices[(i + 1) % n] - vertices[i];
        const Point2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        if (!(cross(e0, e1) > 0.0)) {
            throw std::invalid_argument("polygon not strictly convex CCW");
        }
    }

    ConvexPolygon poly;
    poly.vertices_ = std::move(vertices);
    double lo_x = poly.vertices_[0].x, hi_x = lo_x;
    double lo_y = poly.vertices_[0].y, hi_y = lo_y;
    for (const Point2& v : poly.vertices_) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
    }
    poly.diameter_ = norm(Point2{hi_x - lo_x, hi_y - lo_y});
    poly.eps_ = eps_geom(poly.diameter_);
    poly.normals_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 d = poly.vertices_[(i + 1) % n] - poly.vertices_[i];
        const double len = norm(d);
        poly.normals_.push_back({d.y / len, -d.x / len});
    }
    return poly;
}

bool ConvexPolygon::contains(const Point2& p, double eps) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (dot(normals_[i], p - vertices_[i]) > eps) return false;
    }
    return true;
}

BoundingBox2 bounding_box(const ConvexPolygon& poly) {
    double lo_x = poly.vertex(0).x, hi_x = lo_x;
    double lo_y = poly.vertex(0).y, hi_y = lo_y;
    for (const Point2& v : poly.vertices()) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
    }
    BoundingBox2 box;
    box.center = {0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
    box.half_x = 0.5 * (hi_x - lo_x);
    box.half_y = 0.5 * (hi_y - lo_y);
    box.h = box.half_x + box.half_y;
    return box;
}

ConvexPolyhedron ConvexPolyhedron::from_data(
    std::vector<Point3> vertices, std::vector<std::array<std::uint32_t, 3>> facets) {
    const std::size_t nv = vertices.size();
    const std::size_t nf = facets.size();
    if (nv < 4 || nf < 4) {
        throw std::invalid_argument("polyhedron needs at least 4 vertices and 4 facets");
    }
    for (const Point3& v : vertices) {
        if (!finite(v)) throw std::invalid_argument("polyhedron vertex not finite");
    }

    double lo_x = vertices[0].x, hi_x = lo_x;
    double lo_y = vertices[0].y, hi_y = lo_y;
    double lo_z = vertices[0].z, hi_z = lo_z;
    for (const Point3& v : vertices) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
        lo_z = std::min(lo_z, v.z);
        hi_z = std::max(hi_z, v.z);
    }
    const double diameter = norm(Point3{hi_x - lo_x, hi_y - lo_y, hi_z - lo_z});
    const double eps = eps_geom(diameter);

    std::vector<Point3> normals;
    normals.reserve(nf);
    for (const auto& f : facets) {
        if (f[0] >= nv || f[1] >= nv || f[2] >= nv) {
            throw std::invalid_argument("facet index out of range");
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            throw std::invalid_argument("facet repeats a vertex");
        }
        const Point3 raw = cross(vertices[f[1]] - vertices[f[0]],
                                 vertices[f[2]] - vertices[f[0]]);
        const double len = norm(raw);
        if (!(len > eps * eps)) {
            throw std::invalid_argument("degenerate facet triangle");
        }
        normals.push_back((1.0 / len) * raw);
    }

    // convexity: every vertex on the inner side of every facet plane
    for (std::size_t f = 0; f < nf; ++f) {
        const Point3& base = vertices[facets[f][0]];
        for (const Point3& v : vertices) {
            if (dot(normals[f], v - base) > eps) {
                throw std::invalid_argument("polyhedron not convex");
            }
        }
    }

    // closed orientable surface: each directed edge once, each undirected twice
    std::unordered_set<std::uint64_t> directed;
    directed.reserve(3 * nf);
    for (const auto& f : facets) {
        for (int c = 0; c < 3; ++c) {
            const std::uint64_t a = f[static_cast<std::size_t>(c)];
            const std::uint64_t b = f[static_cast<std::size_t>((c + 1) % 3)];
            if (!directed.insert((a << 32) | b).second) {
                throw std::invalid_argument("directed edge repeated; surface not orientable");
            }
        }
    }
    for (const std::uint64_t e : directed) {
        if (directed.count((e << 32) | (e >> 32)) == 0) {
            throw std::invalid_argument("surface not closed");
        }
    }
    const std::size_t edges = directed.size() / 2;
    if (nv + nf != edges + 2) {
        throw std::invalid_argument("Euler relation V - E + F = 2 violated");
    }

    ConvexPolyhedron poly;
    poly.vertices_ = std::move(vertices);
    poly.facets_ = std::move(facets);
    poly.normals_ = std::move(normals);
    poly.diameter_ = diameter;
    poly.eps_ = eps;
    return poly;
}

bool ConvexPolyhedron::contains(const Point3& p, double eps) const {
    for (std::size_t f = 0; f < facets_.size(); ++f) {
        if (dot(normals_[f], p - vertices_[facets_[f][0]]) > eps) return false;
    }
    return true;
}

BoundingBox2 projected_bounding_box(const ConvexPolyhedron& poly, Plane plane) {
    const Point2 first = project_point(poly.vertices()[0], plane);
    double lo_x = first.x, hi_x = lo_x, lo_y = first.y, hi_y = lo_y;
    for (const Point3& v : poly.vertices()) {
        const Point2 p = project_point(v, plane);
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    BoundingBox2 box;
    box.center = {0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
    box.half_x = 0.5 * (hi_x - lo_x);
    box.half_y = 0.5 * (hi_y - lo_y);
    box.h = box.half_x + box.half_y;
    return box;
}

}  // namespace sdclip
