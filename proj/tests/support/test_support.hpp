#pragma once

/// Shared fixtures and independent reference predicates for the test
/// binaries: canonical regions, closed line-edge and line-triangle crossing
/// oracles, rank statistics, result comparison with a tangency allowance,
/// and a self-cleaning temporary directory.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdclip/geometry.hpp"
#include "sdclip/polygon.hpp"

namespace sdclip::testsupport {

/// Equal within tol in both parameters; Empty also matches an interval of
/// width <= tol (a grazing contact one side resolves as a touch and the
/// other as a miss).
bool results_equal(const ClipResult& a, const ClipResult& b, double tol);

std::string describe(const ClipResult& r);

/// Axis-aligned square [-r, r]^2, CCW from (-r, -r).
ConvexPolygon make_square(double r);

/// Axis-aligned cube [-r, r]^3 as 12 outward-wound triangles.
ConvexPolyhedron make_cube(double r);

/// Regular tetrahedron with circumradius r, centered at the origin.
ConvexPolyhedron make_tetrahedron(double r);

/// True iff the carrier line of seg meets the closed edge a-b (an endpoint
/// exactly on the line counts as a crossing).
bool line_crosses_edge(const Segment2& seg, Point2 a, Point2 b);

/// Carrier-line parameter where seg's line meets the closed triangle
/// v0-v1-v2, by the Moller-Trumbore scheme; nullopt when the line is
/// parallel to the plane or the hit is outside the triangle by more than
/// tol in barycentric units.
std::optional<double> line_hits_triangle(const Segment3& seg, const Point3& v0,
                                         const Point3& v1, const Point3& v2,
                                         double tol);

/// Coefficient of determination of the least-squares line through (xs, ys).
double linear_fit_r2(const std::vector<double>& xs, const std::vector<double>& ys);

/// Spearman rank correlation with average ranks on ties.
double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys);

/// Whole file as bytes; throws std::runtime_error when unreadable.
std::string slurp(const std::filesystem::path& path);

/// Unique directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace sdclip::testsupport
