#include "sdclip/semidual3.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "grid_detail.hpp"

namespace sdclip {

FacetBitmap FacetBitmap::zeros(std::uint32_t nbits) {
    FacetBitmap b;
    b.nbits = nbits;
    b.words.assign((static_cast<std::size_t>(nbits) + 63) / 64, 0);
    return b;
}

void FacetBitmap::set(std::uint32_t bit) {
    words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
}

bool FacetBitmap::test(std::uint32_t bit) const {
    return (words[bit >> 6] >> (bit & 63)) & 1;
}

std::uint32_t FacetBitmap::popcount() const {
    std::uint32_t total = 0;
    for (const std::uint64_t w : words) {
        total += static_cast<std::uint32_t>(__builtin_popcountll(w));
    }
    return total;
}

FacetBitmap FacetBitmap::operator&(const FacetBitmap& o) const {
    if (nbits != o.nbits) throw std::logic_error("bitmap size mismatch");
    FacetBitmap out = zeros(nbits);
    for (std::size_t w = 0; w < words.size(); ++w) out.words[w] = words[w] & o.words[w];
    return out;
}

FacetBitmap AflGrid::cell_bitmap(int i, int j) const {
    FacetBitmap b = FacetBitmap::zeros(nbits);
    const std::uint64_t* w = cell_words(i, j);
    std::copy(w, w + words_per_cell, b.words.begin());
    return b;
}

CellRect AflGrid::cell_rect(int i, int j) const {
    return detail::uniform_cell_rect(n_slope, n_intercept, h, i, j);
}

bool facet_interferes_cell(const ConvexPolyhedron& poly, std::uint32_t facet,
                           Plane plane, const CellRect& cell, Branch branch,
                           const BoundingBox2& plane_box, double tol) {
    const Point2 a = project_point(poly.facet_vertex(facet, 0), plane) - plane_box.center;
    const Point2 b = project_point(poly.facet_vertex(facet, 1), plane) - plane_box.center;
    const Point2 c = project_point(poly.facet_vertex(facet, 2), plane) - plane_box.center;
    return edge_interferes_cell(a, b, cell, branch, tol) ||
           edge_interferes_cell(b, c, cell, branch, tol) ||
           edge_interferes_cell(c, a, cell, branch, tol);
}

namespace {

AflGrid build_afl_grid(const ConvexPolyhedron& poly, Plane plane,
                       const BoundingBox2& box, Branch branch, int n_slope,
                       int n_intercept, double tol, OpCounter& ops) {
    AflGrid grid;
    grid.branch = branch;
    grid.n_slope = n_slope;
    grid.n_intercept = n_intercept;
    grid.h = box.h;
    grid.nbits = static_cast<std::uint32_t>(poly.facet_count());
    grid.words_per_cell = (static_cast<std::size_t>(grid.nbits) + 63) / 64;
    grid.bits.assign(static_cast<std::size_t>(n_slope) *
                         static_cast<std::size_t>(n_intercept) * grid.words_per_cell,
                     0);

    for (std::uint32_t f = 0; f < grid.nbits; ++f) {
        const Point2 tri[3] = {
            project_point(poly.facet_vertex(f, 0), plane) - box.center,
            project_point(poly.facet_vertex(f, 1), plane) - box.center,
            project_point(poly.facet_vertex(f, 2), plane) - box.center,
        };
        ops.add(6, 0, 6, 0, 0);
        const std::size_t word = f >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (f & 63);
        for (int e = 0; e < 3; ++e) {
            detail::for_each_interfering_range(
                tri[e], tri[(e + 1) % 3], branch, n_slope, n_intercept, box.h, tol,
                ops, [&](int j, int first, int last) {
                    for (int i = first; i <= last; ++i) {
                        grid.cell_words(i, j)[word] |= bit;
                    }
                    ops.add(static_cast<std::uint64_t>(last - first + 1), 0, 0, 0, 0);
                });
        }
    }
    return grid;
}

// Cell fetch of the carrier in one plane's grids; nullopt iff the projected
// carrier is out of intercept range (a proven miss for that plane).
struct PlaneFetch {
    const AflGrid* grid = nullptr;
    int i = 0;
    int j = 0;
};

std::optional<PlaneFetch> locate_in_plane(const PlaneData& pd, const Point3& p0,
                                          const Point3& d, OpCounter& ops) {
    const Point2 d2 = project_point(d, pd.plane);
    const Point2 a2 = project_point(p0, pd.plane) - pd.box.center;
    ops.add(4, 0, 2, 0, 0);

    // slope from world differences (translation cancels), intercept in the
    // box-centered frame; a selected plane keeps the dominant axis, so d2 is
    // never the zero vector
    Branch branch;
    double slope, intercept;
    ops.add(0, 3, 0, 0, 0);
    if (std::abs(d2.y) <= std::abs(d2.x)) {
        branch = Branch::KQ;
        slope = d2.y / d2.x;
        intercept = a2.y - slope * a2.x;
    } else {
        branch = Branch::MP;
        slope = d2.x / d2.y;
        intercept = a2.x - slope * a2.y;
    }
    ops.add(2, 0, 1, 1, 1);

    const AflGrid& grid = branch == Branch::KQ ? pd.grid_kq : pd.grid_mp;
    ops.add(0, 2, 0, 0, 0);
    if (std::abs(intercept) > grid.h) return std::nullopt;
    int i = static_cast<int>(
        std::floor((intercept + grid.h) * static_cast<double>(grid.n_intercept) /
                   (2.0 * grid.h)));
    int j = static_cast<int>(
        std::floor((slope + 1.0) * static_cast<double>(grid.n_slope) / 2.0));
    ops.add(4, 4, 2, 3, 2);
    if (i >= grid.n_intercept) i = grid.n_intercept - 1;
    if (j >= grid.n_slope) j = grid.n_slope - 1;
    if (i < 0) i = 0;
    if (j < 0) j = 0;
    return PlaneFetch{&grid, i, j};
}

// Shares the plane-crossing expressions with the reference clipper so
// transversal parameters come out bitwise equal.
std::optional<double> detail_test_impl(const ConvexPolyhedron& poly,
                                       std::uint32_t facet, const Segment3& seg,
                                       OpCounter& ops) {
    const Point3 d = seg.p1 - seg.p0;
    const Point3& nrm = poly.facet_normal(facet);
    const double den = dot(nrm, d);
    const double eps = poly.eps();
    ops.add(5, 0, 5, 3, 0);
    ops.add(0, 2, 0, 0, 0);
    if (std::abs(den) <= eps) return std::nullopt;
    const double t = dot(nrm, poly.facet_vertex(facet, 0) - seg.p0) / den;
    ops.add(1, 0, 5, 3, 1);
    const Point3 x = seg.p0 + t * d;
    ops.add(3, 0, 3, 3, 0);

    // containment in the closed triangle, tested in the projection that
    // drops the normal's dominant axis (the least degenerate shadow)
    const double ax = std::abs(nrm.x);
    const double ay = std::abs(nrm.y);
    const double az = std::abs(nrm.z);
    Plane plane;
    if (ax >= ay && ax >= az) {
        plane = Plane::YZ;
    } else if (ay >= az) {
        plane = Plane::XZ;
    } else {
        plane = Plane::XY;
    }
    ops.add(1, 5, 0, 0, 0);
    const Point2 tri[3] = {
        project_point(poly.facet_vertex(facet, 0), plane),
        project_point(poly.facet_vertex(facet, 1), plane),
        project_point(poly.facet_vertex(facet, 2), plane),
    };
    const Point2 px = project_point(x, plane);
    ops.add(8, 0, 0, 0, 0);
    const double area2 = cross(tri[1] - tri[0], tri[2] - tri[0]);
    const double sign = area2 >= 0.0 ? 1.0 : -1.0;
    ops.add(2, 1, 5, 2, 0);
    for (int e = 0; e < 3; ++e) {
        const Point2 u = tri[(e + 1) % 3] - tri[e];
        const double s = cross(u, px - tri[e]);
        const double len = norm(u);
        ops.add(4, 1, 6, 6, 1);  // sqrt counted as a div
        if (s * sign < -eps * len) return std::nullopt;
    }
    return t;
}

}  // namespace

SemidualClipper3D build_clipper_3d(const ConvexPolyhedron& poly, int n_k, int n_q,
                                   int n_m, int n_p, std::uint64_t budget) {
    if (n_k < 1 || n_q < 1 || n_m < 1 || n_p < 1) {
        throw std::invalid_argument("subdivision counts must be at least 1");
    }
    const std::uint64_t cells =
        static_cast<std::uint64_t>(n_k) * static_cast<std::uint64_t>(n_q) +
        static_cast<std::uint64_t>(n_m) * static_cast<std::uint64_t>(n_p);
    if (cells > budget / (3 * poly.facet_count())) {
        throw std::runtime_error("subdivision too fine");
    }

    const auto start = std::chrono::steady_clock::now();
    SemidualClipper3D clipper;
    clipper.poly = poly;
    const double tol = poly.eps();
    for (int p = 0; p < 3; ++p) {
        const Plane plane = static_cast<Plane>(p);
        PlaneData& pd = clipper.planes[p];
        pd.plane = plane;
        pd.box = projected_bounding_box(poly, plane);
        pd.grid_kq = build_afl_grid(poly, plane, pd.box, Branch::KQ, n_k, n_q, tol,
                                    clipper.build_ops);
        pd.grid_mp = build_afl_grid(poly, plane, pd.box, Branch::MP, n_m, n_p, tol,
                                    clipper.build_ops);
    }
    clipper.build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return clipper;
}

PlaneSelection select_planes(const Point3& direction) {
    const double ax = std::abs(direction.x);
    const double ay = std::abs(direction.y);
    const double az = std::abs(direction.z);
    if (ax == 0.0 && ay == 0.0 && az == 0.0) {
        throw std::invalid_argument("zero direction");
    }
    if (ax >= ay && ax >= az) return {Plane::XY, Plane::XZ};
    if (ay >= az) return {Plane::XY, Plane::YZ};
    return {Plane::XZ, Plane::YZ};
}

std::optional<FacetBitmap> candidate_facets(const SemidualClipper3D& clipper,
                                            const Segment3& seg, OpCounter* counter) {
    OpCounter scratch;
    OpCounter& ops = counter ? *counter : scratch;

    const Point3 d = seg.p1 - seg.p0;
    ops.add(3, 0, 3, 0, 0);
    const PlaneSelection sel = select_planes(d);
    ops.add(2, 5, 0, 0, 0);

    const PlaneData& pa = clipper.planes[static_cast<int>(sel.first)];
    const PlaneData& pb = clipper.planes[static_cast<int>(sel.second)];
    const auto la = locate_in_plane(pa, seg.p0, d, ops);
    if (!la) return std::nullopt;
    const auto lb = locate_in_plane(pb, seg.p0, d, ops);
    if (!lb) return std::nullopt;

    const std::uint64_t* wa = la->grid->cell_words(la->i, la->j);
    const std::uint64_t* wb = lb->grid->cell_words(lb->i, lb->j);
    FacetBitmap out = FacetBitmap::zeros(la->grid->nbits);
    for (std::size_t w = 0; w < out.words.size(); ++w) out.words[w] = wa[w] & wb[w];
    ops.add(out.words.size(), 0, 0, 0, 0);
    return out;
}

std::optional<double> detail_test(const ConvexPolyhedron& poly, std::uint32_t facet,
                                  const Segment3& seg) {
    OpCounter scratch;
    return detail_test_impl(poly, facet, seg, scratch);
}

ClipResult clip_o1_3d(const SemidualClipper3D& clipper, const Segment3& seg,
                      OpCounter* counter) {
    OpCounter scratch;
    OpCounter& ops = counter ? *counter : scratch;

    const auto cand = candidate_facets(clipper, seg, &ops);
    if (!cand) return ClipResult::empty();
    const ConvexPolyhedron& poly = clipper.poly;

    const Point3 d = seg.p1 - seg.p0;
    const double dlen = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    const double eps_t = poly.eps() / dlen;
    ops.add(5, 0, 5, 3, 2);  // sqrt counted as a div

    double ts[5];
    int nt = 0;
    const auto push_t = [&](double t) {
        for (int u = 0; u < nt; ++u) {
            ops.add(0, 2, 1, 0, 0);
            if (std::abs(ts[u] - t) <= eps_t) return;
        }
        if (nt == 5) throw std::logic_error("crossing buffer overflow");
        ts[nt++] = t;
        ops.add(1, 0, 0, 0, 0);
    };

    cand->for_each_set([&](std::uint32_t f) {
        if (const auto t = detail_test_impl(poly, f, seg, ops)) push_t(*t);
    });

    ops.add(0, 1, 0, 0, 0);
    if (nt == 0) return ClipResult::empty();
    double t1 = ts[0], t2 = ts[0];
    ops.add(2, 0, 0, 0, 0);
    for (int u = 1; u < nt; ++u) {
        ops.add(0, 2, 0, 0, 0);
        if (ts[u] < t1) {
            t1 = ts[u];
            ops.add(1, 0, 0, 0, 0);
        }
        if (ts[u] > t2) {
            t2 = ts[u];
            ops.add(1, 0, 0, 0, 0);
        }
    }

    const double lo = t1 > 0.0 ? t1 : 0.0;
    const double hi = t2 < 1.0 ? t2 : 1.0;
    ops.add(2, 3, 0, 0, 0);
    if (lo > hi) return ClipResult::empty();
    return ClipResult::interval(lo, hi);
}

AflStatistics afl_statistics(const SemidualClipper3D& clipper,
                             const std::vector<Segment3>& sample_lines) {
    AflStatistics out;
    const auto grid_stats = [](const AflGrid& g) {
        AflGridStats s;
        std::uint64_t total = 0;
        const std::size_t cells =
            static_cast<std::size_t>(g.n_slope) * static_cast<std::size_t>(g.n_intercept);
        for (std::size_t c = 0; c < cells; ++c) {
            const std::uint64_t* w = g.bits.data() + c * g.words_per_cell;
            std::uint32_t pc = 0;
            for (std::size_t k = 0; k < g.words_per_cell; ++k) {
                pc += static_cast<std::uint32_t>(__builtin_popcountll(w[k]));
            }
            total += pc;
            s.max_popcount = std::max(s.max_popcount, pc);
        }
        if (cells > 0) {
            s.mean_popcount = static_cast<double>(total) / static_cast<double>(cells);
        }
        return s;
    };
    for (int p = 0; p < 3; ++p) {
        out.grids[2 * p] = grid_stats(clipper.planes[p].grid_kq);
        out.grids[2 * p + 1] = grid_stats(clipper.planes[p].grid_mp);
    }

    OpCounter scratch;
    std::uint64_t before_sum = 0;
    std::uint64_t after_sum = 0;
    std::uint64_t ok = 0;
    for (const Segment3& seg : sample_lines) {
        const Point3 d = seg.p1 - seg.p0;
        if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) {
            ++out.misses;
            continue;
        }
        const PlaneSelection sel = select_planes(d);
        const auto la =
            locate_in_plane(clipper.planes[static_cast<int>(sel.first)], seg.p0, d, scratch);
        const auto lb =
            locate_in_plane(clipper.planes[static_cast<int>(sel.second)], seg.p0, d, scratch);
        if (!la || !lb) {
            ++out.misses;
            continue;
        }
        const FacetBitmap ba = la->grid->cell_bitmap(la->i, la->j);
        const FacetBitmap bb = lb->grid->cell_bitmap(lb->i, lb->j);
        before_sum += ba.popcount();
        before_sum += bb.popcount();
        after_sum += (ba & bb).popcount();
        ++ok;
    }
    out.sampled_lines = static_cast<std::uint32_t>(sample_lines.size());
    if (ok > 0) {
        out.mean_before_intersection =
            static_cast<double>(before_sum) / (2.0 * static_cast<double>(ok));
        out.mean_after_intersection =
            static_cast<double>(after_sum) / static_cast<double>(ok);
    }
    return out;
}

}  // namespace sdclip
