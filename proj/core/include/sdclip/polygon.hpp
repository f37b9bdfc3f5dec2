#pragma once

/// Convex clip regions: strictly convex CCW polygons and closed convex
/// triangulated polyhedra, validated on construction, with cached outward
/// unit normals and bounding boxes.

#include <array>
#include <cstdint>
#include <vector>

#include "sdclip/geometry.hpp"

namespace sdclip {

class ConvexPolygon {
public:
    /// Validates and takes ownership: at least 3 vertices, finite, strictly
    /// convex (every consecutive cross product > 0, which forces CCW order
    /// and rules out repeated or collinear vertices). Throws
    /// std::invalid_argument otherwise.
    static ConvexPolygon from_vertices(std::vector<Point2> vertices);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<Point2>& vertices() const { return vertices_; }
    const Point2& vertex(std::size_t i) const { return vertices_[i]; }
    /// Edge i runs vertex(i) -> vertex((i + 1) % size()).
    const Point2& edge_start(std::size_t i) const { return vertices_[i]; }
    const Point2& edge_end(std::size_t i) const {
        return vertices_[(i + 1) % vertices_.size()];
    }
    /// Outward unit normal of edge i.
    const Point2& edge_normal(std::size_t i) const { return normals_[i]; }

    /// Longest vertex-bound diameter estimate (diagonal of the bounds).
    double diameter() const { return diameter_; }
    double eps() const { return eps_; }

    /// True iff p lies inside or within eps of the boundary.
    bool contains(const Point2& p, double eps) const;

private:
    std::vector<Point2> vertices_;
    std::vector<Point2> normals_;
    double diameter_ = 0.0;
    double eps_ = 0.0;
};

BoundingBox2 bounding_box(const ConvexPolygon& poly);

class ConvexPolyhedron {
public:
    /// Validates and takes ownership. Facets are vertex-index triples wound
    /// CCW viewed from outside. Requirements: nondegenerate triangles, every
    /// vertex on the inner side of every facet plane (within tolerance),
    /// closed orientable surface (each directed edge appears exactly once,
    /// each undirected edge exactly twice), Euler V - E + F = 2. Outward
    /// unit normals are recomputed from the winding. Throws
    /// std::invalid_argument otherwise.
    static ConvexPolyhedron from_data(std::vector<Point3> vertices,
                                      std::vector<std::array<std::uint32_t, 3>> facets);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t facet_count() const { return facets_.size(); }
    const std::vector<Point3>& vertices() const { return vertices_; }
    const std::vector<std::array<std::uint32_t, 3>>& facets() const { return facets_; }
    const std::array<std::uint32_t, 3>& facet(std::size_t f) const { return facets_[f]; }
    const Point3& facet_vertex(std::size_t f, int corner) const {
        return vertices_[facets_[f][static_cast<std::size_t>(corner)]];
    }
    const Point3& facet_normal(std::size_t f) const { return normals_[f]; }

    double diameter() const { return diameter_; }
    double eps() const { return eps_; }

    bool contains(const Point3& p, double eps) const;

private:
    std::vector<Point3> vertices_;
    std::vector<std::array<std::uint32_t, 3>> facets_;
    std::vector<Point3> normals_;
    double diameter_ = 0.0;
    double eps_ = 0.0;
};

/// Bounding box of the polyhedron's vertex projections onto one plane.
BoundingBox2 projected_bounding_box(const ConvexPolyhedron& poly, Plane plane);

}  // namespace sdclip
