#pragma once

/// Incremental convex hull of 3D points in general position, producing
/// outward-wound triangles. Intended for point sets sampled on a sphere,
/// where every point is a hull vertex.

#include <array>
#include <cstdint>
#include <vector>

#include "sdclip/geometry.hpp"

namespace sdclip {

/// Hull facets as vertex-index triples wound CCW viewed from outside.
/// Points inside the growing hull (possible only for degenerate input) are
/// skipped. Throws std::invalid_argument when fewer than four points or no
/// non-coplanar seed tetrahedron exists.
std::vector<std::array<std::uint32_t, 3>> convex_hull(const std::vector<Point3>& points);

}  // namespace sdclip
