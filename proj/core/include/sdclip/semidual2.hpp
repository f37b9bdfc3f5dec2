#pragma once

/// Constant-time polygon clipper. A line's carrier maps to a point in one of
/// two bounded slope-intercept domains (slope in <-1,1>, intercept in <-h,h>
/// of the box-centered frame); each domain carries a rectangular grid whose
/// cells list every polygon edge some line of the cell can cross (the active
/// edge list, AEL). Clipping locates the carrier's cell and intersects the
/// segment with the listed edges only.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdclip/geometry.hpp"
#include "sdclip/op_counter.hpp"
#include "sdclip/polygon.hpp"

namespace sdclip {

/// One rectangle of a slope-intercept domain.
struct CellRect {
    double slope_lo = 0.0;
    double slope_hi = 0.0;
    double intercept_lo = 0.0;
    double intercept_hi = 0.0;
};

struct CellIndex {
    int i = 0;  ///< intercept index
    int j = 0;  ///< slope index
};

/// Grid over one branch's domain. Cell (i, j) covers intercept slab i and
/// slope slab j; its AEL is a sorted duplicate-free list of edge indices.
struct SemidualGrid {
    Branch branch = Branch::KQ;
    int n_slope = 0;
    int n_intercept = 0;
    double h = 0.0;
    std::vector<std::vector<std::uint32_t>> cells;  ///< row-major, i * n_slope + j

    const std::vector<std::uint32_t>& cell(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_slope) +
                     static_cast<std::size_t>(j)];
    }
    CellRect cell_rect(int i, int j) const;
};

struct SemidualClipper2D {
    ConvexPolygon polygon;
    BoundingBox2 box;
    SemidualGrid grid_kq;
    SemidualGrid grid_mp;
    OpCounter build_ops;        ///< operation tallies of the grid build
    double build_seconds = 0.0; ///< wall-clock build time (informational)
    std::uint64_t ael_entries = 0;
};

/// Subdivision counts per grid, with flags marking criteria that had fewer
/// than two distinct values in their gap set and fell back to the default n
/// = vertex count.
struct SubdivisionChoice {
    int n_k = 1;
    int n_q = 1;
    int n_m = 1;
    int n_p = 1;
    bool k_defaulted = false;
    bool q_defaulted = false;
    bool m_defaulted = false;
    bool p_defaulted = false;
};

inline constexpr std::uint64_t kDefaultAelBudget = std::uint64_t{1} << 24;

/// Gap-criterion subdivision: n_q = ceil(2a / dy) + 1 where dy is the
/// smallest positive gap between distinct vertex ordinates and a =
/// max(half_x, half_y); n_k = ceil(2 / dk) + 1 where dk is the smallest
/// positive gap between distinct KQ-branch edge slopes; n_p and n_m
/// symmetrically from abscissa gaps and MP-branch slopes. A criterion with
/// fewer than two distinct values defaults to n = vertex count and is
/// flagged. Each grid's n_slope * n_intercept product is scaled down
/// proportionally if it exceeds max_cells.
SubdivisionChoice recommend_subdivision(const ConvexPolygon& poly,
                                        std::uint64_t max_cells);

/// Rule-of-thumb subdivision adequate for an n-vertex polygon: n in the
/// slope direction, 10 n in the intercept direction.
SubdivisionChoice adequate_subdivision(int n);

/// True iff some line with (slope, intercept) in the cell crosses the closed
/// edge a-b (endpoints in the box-centered frame). Evaluates both endpoint
/// residuals c - slope*d - intercept at the four cell corners; the edge is
/// clear of the cell exactly when all eight residuals share one strict sign
/// beyond tol. Exact for closed crossings up to the tol padding, never an
/// underapproximation.
bool edge_interferes_cell(Point2 a, Point2 b, const CellRect& cell, Branch branch,
                          double tol);

/// Builds both grids. Throws std::runtime_error("subdivision too fine") when
/// (n_k*n_q + n_m*n_p) * N exceeds the AEL entry budget.
SemidualClipper2D build_clipper_2d(const ConvexPolygon& poly, int n_k, int n_q,
                                   int n_m, int n_p,
                                   std::uint64_t budget = kDefaultAelBudget);

inline SemidualClipper2D build_clipper_2d(const ConvexPolygon& poly,
                                          const SubdivisionChoice& c,
                                          std::uint64_t budget = kDefaultAelBudget) {
    return build_clipper_2d(poly, c.n_k, c.n_q, c.n_m, c.n_p, budget);
}

/// Cell of a line representation: i = floor((intercept + h) * n_intercept /
/// (2h)), j = floor((slope + 1) * n_slope / 2), clamped onto the grid at the
/// upper boundary. nullopt iff |intercept| > h, which proves the line misses
/// the bounding rhomb and hence the polygon.
std::optional<CellIndex> locate_cell(const SemidualGrid& grid, const LineRep& rep);

/// Clips seg against the polygon in O(|AEL|): locate the carrier's cell,
/// intersect the carrier with each listed edge, and cut the crossing span
/// down to t in [0, 1]. Throws std::logic_error("AEL not conservative") if
/// the carrier crosses the polygon boundary once away from every vertex,
/// which only a defective grid can produce.
ClipResult clip_o1_2d(const SemidualClipper2D& clipper, const Segment2& seg,
                      OpCounter* counter = nullptr);

struct AelGridStats {
    double mean = 0.0;
    int max = 0;
    std::vector<std::uint64_t> histogram;  ///< histogram[len] = number of cells
};

struct AelStatistics {
    AelGridStats kq;
    AelGridStats mp;
    std::uint64_t entries = 0;
    double build_cost = 0.0;  ///< weighted op cost of the build
    double build_seconds = 0.0;
};

AelStatistics ael_statistics(const SemidualClipper2D& clipper);

}  // namespace sdclip
