#pragma once

/// Constant-time polyhedron clipper. The polyhedron's facets are projected
/// onto the XY, XZ, and YZ planes; each plane carries two slope-intercept
/// grids (one per branch) whose cells hold facet bitmaps: bit f is set when
/// some line of the cell crosses facet f's projection. Grids are ordered
/// (XY,KQ), (XY,MP), (XZ,KQ), (XZ,MP), (YZ,KQ), (YZ,MP). A query selects the
/// two planes containing the segment's dominant axis, fetches one bitmap per
/// plane, intersects them, and runs a direct line-triangle test on the
/// surviving facets only.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdclip/geometry.hpp"
#include "sdclip/op_counter.hpp"
#include "sdclip/polygon.hpp"
#include "sdclip/semidual2.hpp"

namespace sdclip {

/// Fixed-width bit vector over facet indices.
struct FacetBitmap {
    std::vector<std::uint64_t> words;
    std::uint32_t nbits = 0;

    static FacetBitmap zeros(std::uint32_t nbits);
    void set(std::uint32_t bit);
    bool test(std::uint32_t bit) const;
    std::uint32_t popcount() const;
    FacetBitmap operator&(const FacetBitmap& o) const;

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t word = words[w];
            while (word) {
                const int bit = __builtin_ctzll(word);
                fn(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bit)));
                word &= word - 1;
            }
        }
    }
};

/// Grid over one branch of one projection plane; cells hold facet bitmaps
/// stored contiguously.
struct AflGrid {
    Branch branch = Branch::KQ;
    int n_slope = 0;
    int n_intercept = 0;
    double h = 0.0;
    std::uint32_t nbits = 0;
    std::size_t words_per_cell = 0;
    std::vector<std::uint64_t> bits;

    const std::uint64_t* cell_words(int i, int j) const {
        return bits.data() +
               (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_slope) +
                static_cast<std::size_t>(j)) *
                   words_per_cell;
    }
    std::uint64_t* cell_words(int i, int j) {
        return const_cast<std::uint64_t*>(
            static_cast<const AflGrid&>(*this).cell_words(i, j));
    }
    FacetBitmap cell_bitmap(int i, int j) const;
    CellRect cell_rect(int i, int j) const;
};

struct PlaneData {
    Plane plane = Plane::XY;
    BoundingBox2 box;
    AflGrid grid_kq;
    AflGrid grid_mp;
};

struct SemidualClipper3D {
    ConvexPolyhedron poly;
    PlaneData planes[3];  ///< XY, XZ, YZ
    OpCounter build_ops;
    double build_seconds = 0.0;
};

/// True iff some line with (slope, intercept) in the cell crosses facet f's
/// projection onto the plane (cell coordinates in the box-centered frame of
/// plane_box). A 2D line crosses a triangle exactly when it crosses one of
/// the triangle's closed edges, so this is the union of three
/// edge_interferes_cell tests; a triangle collinear under projection is
/// covered because one of its edges is the full carrier segment.
bool facet_interferes_cell(const ConvexPolyhedron& poly, std::uint32_t facet,
                           Plane plane, const CellRect& cell, Branch branch,
                           const BoundingBox2& plane_box, double tol);

/// Builds all six grids. Throws std::runtime_error("subdivision too fine")
/// when total cells * facet count exceeds the budget.
SemidualClipper3D build_clipper_3d(const ConvexPolyhedron& poly, int n_k, int n_q,
                                   int n_m, int n_p,
                                   std::uint64_t budget = kDefaultAelBudget);

struct PlaneSelection {
    Plane first = Plane::XY;
    Plane second = Plane::XZ;
};

/// The two projection planes containing the direction's dominant axis
/// (argmax of |dx|, |dy|, |dz|; ties prefer x over y over z): x -> (XY, XZ),
/// y -> (XY, YZ), z -> (XZ, YZ). Throws std::invalid_argument on a zero
/// direction.
PlaneSelection select_planes(const Point3& direction);

/// Bitmap AND of the two per-plane candidate sets for the segment's carrier;
/// nullopt (a proven miss) iff the projected carrier is out of intercept
/// range in either selected plane.
std::optional<FacetBitmap> candidate_facets(const SemidualClipper3D& clipper,
                                            const Segment3& seg,
                                            OpCounter* counter = nullptr);

/// Carrier-line parameter at which seg's line crosses facet f, or nullopt
/// when the line is parallel to the facet plane or the intersection point
/// falls outside the closed triangle (vertex and edge hits count as inside,
/// within the polyhedron's tolerance).
std::optional<double> detail_test(const ConvexPolyhedron& poly, std::uint32_t facet,
                                  const Segment3& seg);

/// Clips seg against the polyhedron: candidate facets via two-plane bitmap
/// intersection, detail test per surviving facet, crossing parameters
/// deduplicated within tolerance (convexity allows at most two distinct
/// ones), then cut down to t in [0, 1].
ClipResult clip_o1_3d(const SemidualClipper3D& clipper, const Segment3& seg,
                      OpCounter* counter = nullptr);

struct AflGridStats {
    double mean_popcount = 0.0;
    std::uint32_t max_popcount = 0;
};

struct AflStatistics {
    AflGridStats grids[6];  ///< (XY,KQ), (XY,MP), (XZ,KQ), (XZ,MP), (YZ,KQ), (YZ,MP)
    double mean_before_intersection = 0.0;  ///< mean fetched per-plane popcount
    double mean_after_intersection = 0.0;   ///< mean popcount of the AND
    std::uint32_t sampled_lines = 0;
    std::uint32_t misses = 0;  ///< sample lines that were out of range
};

/// Exact per-cell statistics of all six grids plus fetched-bitmap statistics
/// over the sample lines.
AflStatistics afl_statistics(const SemidualClipper3D& clipper,
                             const std::vector<Segment3>& sample_lines);

}  // namespace sdclip
