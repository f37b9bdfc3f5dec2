#pragma once

/// Brute-force half-space interval oracle used as the reference in
/// differential tests. Implemented independently of the instrumented
/// clippers: normals are recomputed from the vertices on every call, the
/// tolerance is derived from the oracle's own bounds scan, and no helper
/// code is shared with the other clipping paths.

#include "sdclip/geometry.hpp"
#include "sdclip/polygon.hpp"

namespace sdclip {

ClipResult clip_halfspace_oracle(const ConvexPolygon& poly, const Segment2& seg);

ClipResult clip_halfspace_oracle(const ConvexPolyhedron& poly, const Segment3& seg);

}  // namespace sdclip
