#pragma once

/// Instrumented Cyrus-Beck parametric clippers: one half-plane/half-space
/// test per region edge/facet, O(N) per segment. Every plane is visited on
/// every call (no early exit on an already-empty interval) so the measured
/// cost is independent of the hit/miss mix; a line parallel to a plane with
/// its origin strictly outside returns Empty immediately.

#include "sdclip/geometry.hpp"
#include "sdclip/op_counter.hpp"
#include "sdclip/polygon.hpp"

namespace sdclip {

ClipResult clip_cyrus_beck_2d(const ConvexPolygon& poly, const Segment2& seg,
                              OpCounter* counter = nullptr);

ClipResult clip_cyrus_beck_3d(const ConvexPolyhedron& poly, const Segment3& seg,
                              OpCounter* counter = nullptr);

}  // namespace sdclip
