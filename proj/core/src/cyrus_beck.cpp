#include "sdclip/cyrus_beck.hpp"

#include <cmath>

namespace sdclip {

// Both clippers share the scheme: per region plane with outward unit normal
// nrm and base vertex v, num = nrm.(v - p0) and den = nrm.d classify the
// carrier; den > 0 leaves at t = num/den (t_exit shrinks), den < 0 enters
// (t_enter grows), |den| <= eps is parallel and rejects iff p0 lies strictly
// outside (num < -eps). The interval starts at [0, 1]; every plane is always
// visited. Counter increments are batched per block, one tick per scalar
// source operation (abs counts as a compare).

ClipResult clip_cyrus_beck_2d(const ConvexPolygon& poly, const Segment2& seg,
                              OpCounter* counter) {
    OpCounter scratch;
    OpCounter& ops = counter ? *counter : scratch;

    const Point2 d = seg.p1 - seg.p0;
    double t_enter = 0.0;
    double t_exit = 1.0;
    ops.add(4, 0, 2, 0, 0);

    const double eps = poly.eps();
    const std::size_t n = poly.size();
    for (std::size_t e = 0; e < n; ++e) {
        const Point2& nrm = poly.edge_normal(e);
        const Point2 w = poly.edge_start(e) - seg.p0;
        const double den = nrm.x * d.x + nrm.y * d.y;
        const double num = nrm.x * w.x + nrm.y * w.y;
        ops.add(4, 0, 4, 4, 0);
        ops.add(0, 2, 0, 0, 0);  // abs(den) and the parallel test
        if (std::abs(den) <= eps) {
            ops.add(0, 1, 0, 0, 0);
            if (num < -eps) return ClipResult::empty();
            continue;
        }
        const double t = num / den;
        ops.add(1, 2, 0, 0, 1);  // t, the den sign test, the update compare
        if (den > 0.0) {
            if (t < t_exit) {
                t_exit = t;
                ops.add(1, 0, 0, 0, 0);
            }
        } else {
            if (t > t_enter) {
                t_enter = t;
                ops.add(1, 0, 0, 0, 0);
            }
        }
    }
    ops.add(0, 1, 0, 0, 0);
    if (t_enter > t_exit) return ClipResult::empty();
    return ClipResult::interval(t_enter, t_exit);
}

ClipResult clip_cyrus_beck_3d(const ConvexPolyhedron& poly, const Segment3& seg,
                              OpCounter* counter) {
    OpCounter scratch;
    OpCounter& ops = counter ? *counter : scratch;

    const Point3 d = seg.p1 - seg.p0;
    double t_enter = 0.0;
    double t_exit = 1.0;
    ops.add(5, 0, 3, 0, 0);

    const double eps = poly.eps();
    const std::size_t n = poly.facet_count();
    for (std::size_t f = 0; f < n; ++f) {
        const Point3& nrm = poly.facet_normal(f);
        const Point3 w = poly.facet_vertex(f, 0) - seg.p0;
        const double den = nrm.x * d.x + nrm.y * d.y + nrm.z * d.z;
        const double num = nrm.x * w.x + nrm.y * w.y + nrm.z * w.z;
        ops.add(5, 0, 7, 6, 0);
        ops.add(0, 2, 0, 0, 0);
        if (std::abs(den) <= eps) {
            ops.add(0, 1, 0, 0, 0);
            if (num < -eps) return ClipResult::empty();
            continue;
        }
        const double t = num / den;
        ops.add(1, 2, 0, 0, 1);
        if (den > 0.0) {
            if (t < t_exit) {
                t_exit = t;
                ops.add(1, 0, 0, 0, 0);
            }
        } else {
            if (t > t_enter) {
                t_enter = t;
                ops.add(1, 0, 0, 0, 0);
            }
        }
    }
    ops.add(0, 1, 0, 0, 0);
    if (t_enter > t_exit) return ClipResult::empty();
    return ClipResult::interval(t_enter, t_exit);
}

}  // namespace sdclip
