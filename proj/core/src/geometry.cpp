#include "sdclip/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sdclip {

LineRep to_semidual(Point2 p0, Point2 p1) {
    const double dx = p1.x - p0.x;
    const double dy = p1.y - p0.y;
    if (dx == 0.0 && dy == 0.0) {
        throw std::invalid_argument("zero-length segment");
    }
    if (std::abs(dy) <= std::abs(dx)) {
        const double k = dy / dx;
        return {Branch::KQ, k, p0.y - k * p0.x};
    }
    const double m = dx / dy;
    return {Branch::MP, m, p0.x - m * p0.y};
}

Point2 project_point(const Point3& p, Plane plane) {
    switch (plane) {
        case Plane::XY: return {p.x, p.y};
        case Plane::XZ: return {p.x, p.z};
        default: return {p.y, p.z};
    }
}

Segment2 project_segment(const Segment3& s, Plane plane) {
    return {project_point(s.p0, plane), project_point(s.p1, plane)};
}

}  // namespace sdclip
