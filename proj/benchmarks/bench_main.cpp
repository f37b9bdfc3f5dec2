// Wall-clock microbenchmarks for the clipping paths. The instrumented op
// counts in the library are the portable cost measure; these benchmarks
// exist to sanity-check that real time follows the same shape.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "sdclip/cyrus_beck.hpp"
#include "sdclip/semidual2.hpp"
#include "sdclip/semidual3.hpp"
#include "sdclip/workload.hpp"

namespace {

using namespace sdclip;

constexpr std::size_t kPool = 4096;  // power of two, masked cycling

std::vector<Segment2> pool_2d(const ConvexPolygon& poly, std::uint64_t seed) {
    return gen_lines(poly, static_cast<int>(kPool), 0.5, seed);
}

std::vector<Segment3> pool_3d(const ConvexPolyhedron& poly, std::uint64_t seed) {
    return gen_lines(poly, static_cast<int>(kPool), 0.5, seed);
}

void bm_clip_reference_2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ConvexPolygon poly = gen_convex_polygon(n, 1000 + n, 10.0);
    const std::vector<Segment2> lines = pool_2d(poly, 2000 + n);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clip_cyrus_beck_2d(poly, lines[i]));
        i = (i + 1) & (kPool - 1);
    }
}
BENCHMARK(bm_clip_reference_2d)->Arg(3)->Arg(10)->Arg(50);

void bm_clip_constant_2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ConvexPolygon poly = gen_convex_polygon(n, 1000 + n, 10.0);
    const SemidualClipper2D clipper = build_clipper_2d(poly, adequate_subdivision(n));
    const std::vector<Segment2> lines = pool_2d(poly, 2000 + n);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clip_o1_2d(clipper, lines[i]));
        i = (i + 1) & (kPool - 1);
    }
}
BENCHMARK(bm_clip_constant_2d)->Arg(3)->Arg(10)->Arg(50);

void bm_build_2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ConvexPolygon poly = gen_convex_polygon(n, 1000 + n, 10.0);
    const SubdivisionChoice choice = adequate_subdivision(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_clipper_2d(poly, choice));
    }
}
BENCHMARK(bm_build_2d)->Arg(3)->Arg(10)->Arg(50);

void bm_clip_reference_3d(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    const ConvexPolyhedron poly = gen_convex_polyhedron(f, 3000 + f, 10.0);
    const std::vector<Segment3> lines = pool_3d(poly, 4000 + f);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clip_cyrus_beck_3d(poly, lines[i]));
        i = (i + 1) & (kPool - 1);
    }
}
BENCHMARK(bm_clip_reference_3d)->Arg(12)->Arg(60)->Arg(500);

void bm_clip_constant_3d(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    const ConvexPolyhedron poly = gen_convex_polyhedron(f, 3000 + f, 10.0);
    const SemidualClipper3D clipper = build_clipper_3d(poly, 15, 15, 15, 15);
    const std::vector<Segment3> lines = pool_3d(poly, 4000 + f);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clip_o1_3d(clipper, lines[i]));
        i = (i + 1) & (kPool - 1);
    }
}
BENCHMARK(bm_clip_constant_3d)->Arg(12)->Arg(60)->Arg(500);

void bm_candidate_facets(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    const ConvexPolyhedron poly = gen_convex_polyhedron(f, 3000 + f, 10.0);
    const SemidualClipper3D clipper = build_clipper_3d(poly, 15, 15, 15, 15);
    const std::vector<Segment3> lines = pool_3d(poly, 4000 + f);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(candidate_facets(clipper, lines[i]));
        i = (i + 1) & (kPool - 1);
    }
}
BENCHMARK(bm_candidate_facets)->Arg(12)->Arg(60)->Arg(500)->Arg(2112);

}  // namespace

BENCHMARK_MAIN();
