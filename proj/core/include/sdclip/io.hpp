#pragma once

/// File formats: region JSON, line and result CSV, and versioned clipper
/// serialization. Region and line files round-trip doubles exactly; result
/// rows are fixed at six significant digits.

#include <stdexcept>
#include <string>
#include <vector>

#include "sdclip/polygon.hpp"
#include "sdclip/semidual2.hpp"
#include "sdclip/semidual3.hpp"

namespace sdclip {

/// Malformed or unsupported input file; the message carries the position.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"vertices": [[x, y], ...]}
ConvexPolygon load_polygon(const std::string& path);
void save_polygon(const ConvexPolygon& poly, const std::string& path);

/// {"vertices": [[x, y, z], ...], "facets": [[a, b, c], ...]}; facets wound
/// CCW viewed from outside, normals recomputed on load.
ConvexPolyhedron load_polyhedron(const std::string& path);
void save_polyhedron(const ConvexPolyhedron& poly, const std::string& path);

/// 2 for a polygon file, 3 for a polyhedron file.
int region_dimension(const std::string& path);

/// CSV with header x0,y0,x1,y1 (2D) or x0,y0,z0,x1,y1,z1 (3D).
std::vector<Segment2> load_lines_2d(const std::string& path);
std::vector<Segment3> load_lines_3d(const std::string& path);
void save_lines(const std::vector<Segment2>& lines, const std::string& path);
void save_lines(const std::vector<Segment3>& lines, const std::string& path);
int lines_dimension(const std::string& path);

/// CSV with header index,status,t_enter,t_exit,ex0,ey0[,ez0],ex1,ey1[,ez1];
/// status is "interval" or "empty", empty rows leave the numeric fields
/// blank, clipped endpoints are evaluated from the parameters.
void save_results(const std::vector<ClipResult>& results,
                  const std::vector<Segment2>& lines, const std::string& path);
void save_results(const std::vector<ClipResult>& results,
                  const std::vector<Segment3>& lines, const std::string& path);

/// Versioned JSON container holding the region, the box(es), grid
/// dimensions, and per-cell AEL/bitmap payloads. Reloading reproduces clip
/// results exactly. Unknown versions raise ParseError.
void save_clipper(const SemidualClipper2D& clipper, const std::string& path);
void save_clipper(const SemidualClipper3D& clipper, const std::string& path);
SemidualClipper2D load_clipper_2d(const std::string& path);
SemidualClipper3D load_clipper_3d(const std::string& path);
int clipper_dimension(const std::string& path);

}  // namespace sdclip
