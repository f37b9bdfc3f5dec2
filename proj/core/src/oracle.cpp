#include "sdclip/oracle.hpp"

#include <cmath>
#include <vector>

// Deliberately self-contained: normals are rebuilt from the vertices on
// every call, the tolerance comes from this file's own bounds scan, and no
// helper from the instrumented clippers is used. Slow and obvious on
// purpose; this is the reference the fast paths are judged against.

namespace sdclip {

ClipResult clip_halfspace_oracle(const ConvexPolygon& poly, const Segment2& seg) {
    const std::vector<Point2>& vs = poly.vertices();
    double lo_x = vs[0].x, hi_x = vs[0].x, lo_y = vs[0].y, hi_y = vs[0].y;
    for (const Point2& v : vs) {
        if (v.x < lo_x) lo_x = v.x;
        if (v.x > hi_x) hi_x = v.x;
        if (v.y < lo_y) lo_y = v.y;
        if (v.y > hi_y) hi_y = v.y;
    }
    const double tol =
        1e-9 * (1.0 + std::sqrt((hi_x - lo_x) * (hi_x - lo_x) +
                                (hi_y - lo_y) * (hi_y - lo_y)));

    const double dx = seg.p1.x - seg.p0.x;
    const double dy = seg.p1.y - seg.p0.y;
    double lo = 0.0;
    double hi = 1.0;
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vs[i];
        const Point2& b = vs[(i + 1) % n];
        // outward normal of the CCW edge a -> b
        double nx = b.y - a.y;
        double ny = a.x - b.x;
        const double len = std::sqrt(nx * nx + ny * ny);
        nx /= len;
        ny /= len;
        const double den = nx * dx + ny * dy;
        const double num = nx * (a.x - seg.p0.x) + ny * (a.y - seg.p0.y);
        if (std::abs(den) <= tol) {
            if (num < -tol) return ClipResult::empty();
            continue;
        }
        const double t = num / den;
        if (den > 0.0) {
            if (t < hi) hi = t;
        } else {
            if (t > lo) lo = t;
        }
    }
    if (lo > hi) return ClipResult::empty();
    return ClipResult::interval(lo, hi);
}

ClipResult clip_halfspace_oracle(const ConvexPolyhedron& poly, const Segment3& seg) {
    const std::vector<Point3>& vs = poly.vertices();
    double lo_x = vs[0].x, hi_x = vs[0].x;
    double lo_y = vs[0].y, hi_y = vs[0].y;
    double lo_z = vs[0].z, hi_z = vs[0].z;
    for (const Point3& v : vs) {
        if (v.x < lo_x) lo_x = v.x;
        if (v.x > hi_x) hi_x = v.x;
        if (v.y < lo_y) lo_y = v.y;
        if (v.y > hi_y) hi_y = v.y;
        if (v.z < lo_z) lo_z = v.z;
        if (v.z > hi_z) hi_z = v.z;
    }
    const double sx = hi_x - lo_x, sy = hi_y - lo_y, sz = hi_z - lo_z;
    const double tol = 1e-9 * (1.0 + std::sqrt(sx * sx + sy * sy + sz * sz));

    const double dx = seg.p1.x - seg.p0.x;
    const double dy = seg.p1.y - seg.p0.y;
    const double dz = seg.p1.z - seg.p0.z;
    double lo = 0.0;
    double hi = 1.0;
    for (const auto& f : poly.facets()) {
        const Point3& a = vs[f[0]];
        const Point3& b = vs[f[1]];
        const Point3& c = vs[f[2]];
        // outward raw normal of the CCW-from-outside triangle a, b, c
        const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
        const double wx = c.x - a.x, wy = c.y - a.y, wz = c.z - a.z;
        double nx = uy * wz - uz * wy;
        double ny = uz * wx - ux * wz;
        double nz = ux * wy - uy * wx;
        const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
        nx /= len;
        ny /= len;
        nz /= len;
        const double den = nx * dx + ny * dy + nz * dz;
        const double num =
            nx * (a.x - seg.p0.x) + ny * (a.y - seg.p0.y) + nz * (a.z - seg.p0.z);
        if (std::abs(den) <= tol) {
            if (num < -tol) return ClipResult::empty();
            continue;
        }
        const double t = num / den;
        if (den > 0.0) {
            if (t < hi) hi = t;
        } else {
            if (t > lo) lo = t;
        }
    }
    if (lo > hi) return ClipResult::empty();
    return ClipResult::interval(lo, hi);
}

}  // namespace sdclip
