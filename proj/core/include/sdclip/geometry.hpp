#pragma once

/// Fundamental geometric types: points, segments, bounded slope-intercept
/// line representations, bounding boxes, and clip results.

#include <cstdint>
#include <cmath>

namespace sdclip {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using Vec2 = Point2;
using Vec3 = Point3;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
/// Scalar 2D cross product; sign gives the orientation of b relative to a.
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::sqrt(dot(a, a)); }

inline Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(Point3 a, Point3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }

/// Parametric segment p(t) = p0 + t*(p1 - p0); the carrier line extends t
/// over all reals, the segment itself is t in [0, 1].
struct Segment2 {
    Point2 p0, p1;
};

struct Segment3 {
    Point3 p0, p1;
};

/// Which slope-intercept form represents a line: KQ is y = k*x + q with
/// |k| <= 1, MP is x = m*y + p with |m| <= 1. Every direction fits exactly
/// one branch (ties |dx| = |dy| go to KQ).
enum class Branch : std::uint8_t { KQ, MP };

/// Axis-aligned projection planes for 3D work.
enum class Plane : std::uint8_t { XY, XZ, YZ };

/// A line in one slope-intercept branch. slope is k (KQ) or m (MP),
/// intercept is q (KQ) or p (MP); |slope| <= 1 always holds.
struct LineRep {
    Branch branch = Branch::KQ;
    double slope = 0.0;
    double intercept = 0.0;
};

/// Axis-aligned bounding rectangle plus the intercept bound h = half_x +
/// half_y: in the box-centered frame every bounded-slope line meeting the
/// circumscribed rhomb {|x| + |y| <= h} has |intercept| <= h, so |intercept|
/// > h proves a miss.
struct BoundingBox2 {
    Point2 center;
    double half_x = 0.0;
    double half_y = 0.0;
    double h = 0.0;
};

enum class ClipKind : std::uint8_t { Empty, Interval };

/// Result of clipping a segment: Empty, or the parameter interval
/// [t_enter, t_exit] within [0, 1] (t_enter == t_exit at tangencies).
struct ClipResult {
    ClipKind kind = ClipKind::Empty;
    double t_enter = 0.0;
    double t_exit = 0.0;

    static ClipResult empty() { return {}; }
    static ClipResult interval(double t0, double t1) {
        return {ClipKind::Interval, t0, t1};
    }
    bool is_empty() const { return kind == ClipKind::Empty; }
};

/// Absolute tolerance for side/containment tests at a given scene diameter.
inline double eps_geom(double diameter) { return 1e-9 * (1.0 + diameter); }

inline double diameter(const BoundingBox2& box) {
    return 2.0 * std::sqrt(box.half_x * box.half_x + box.half_y * box.half_y);
}

/// Slope-intercept form of the carrier line through p0 and p1, branch chosen
/// so |slope| <= 1. Throws std::invalid_argument on a zero-length segment.
LineRep to_semidual(Point2 p0, Point2 p1);

/// Drop one coordinate: XY keeps (x,y), XZ keeps (x,z), YZ keeps (y,z).
Point2 project_point(const Point3& p, Plane plane);

Segment2 project_segment(const Segment3& s, Plane plane);

}  // namespace sdclip
