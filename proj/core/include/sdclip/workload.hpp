#pragma once

/// Deterministic workload generation: a fixed 64-bit RNG (bit-identical per
/// seed), random convex regions, and line sets with an exact hit count.

#include <cstdint>
#include <vector>

#include "sdclip/geometry.hpp"
#include "sdclip/polygon.hpp"

namespace sdclip {

/// xoshiro256** seeded via splitmix64. Fixed algorithm, not the standard
/// library's distributions, so identical seeds give identical workloads
/// regardless of toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller (pairs cached).
    double gauss();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct WorkloadSpec {
    int dimension = 2;    ///< 2 or 3
    int n = 3;            ///< vertices (2D) or target facet count (3D)
    int m = 0;            ///< number of lines
    double pr = 0.0;      ///< fraction of lines that hit, in [0, 1]
    std::uint64_t seed = 0;
    double extent = 10.0; ///< world scale of the region
};

/// n vertices at sorted random angles on an ellipse with radial jitter,
/// retried until strictly convex with all four subdivision gap criteria
/// defined where possible; falls back to a regular polygon under an
/// irrational rotation. Deterministic per seed.
ConvexPolygon gen_convex_polygon(int n, std::uint64_t seed, double extent);

/// Convex hull of target_facets/2 + 2 points on a sphere of radius extent
/// (general position gives exactly target_facets triangles; degenerate draws
/// are retried from the same stream). target_facets must be >= 4 and even.
ConvexPolyhedron gen_convex_polyhedron(int target_facets, std::uint64_t seed,
                                       double extent);

/// Exactly round(pr * m) segments that hit the region (chords through two
/// interior points, extended well past the boundary) and the rest missing
/// it (rejection-sampled within 3x the region's extent), labels verified
/// against the half-space oracle, deterministically shuffled.
std::vector<Segment2> gen_lines(const ConvexPolygon& region, int m, double pr,
                                std::uint64_t seed);

std::vector<Segment3> gen_lines(const ConvexPolyhedron& region, int m, double pr,
                                std::uint64_t seed);

}  // namespace sdclip
