#include "sdclip/semidual2.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "grid_detail.hpp"

namespace sdclip {

CellRect SemidualGrid::cell_rect(int i, int j) const {
    return detail::uniform_cell_rect(n_slope, n_intercept, h, i, j);
}

namespace {

// Minimal gap between consecutive distinct sorted values; 0 when fewer than
// two distinct values exist.
double min_positive_gap(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    double best = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double gap = values[i] - values[i - 1];
        if (gap > 0.0 && (best == 0.0 || gap < best)) best = gap;
    }
    return best;
}

// ceil(2 * span / gap) + 1, held as a double and clamped so later cell-count
// products cannot overflow; the build's entry budget rejects oversized grids.
int criterion_count(double span, double gap) {
    const double raw = std::ceil(2.0 * span / gap) + 1.0;
    const double cap = static_cast<double>(std::int64_t{1} << 30);
    return static_cast<int>(std::max(1.0, std::min(raw, cap)));
}

void cap_pair(int& n_slope, int& n_intercept, std::uint64_t max_cells) {
    const std::uint64_t prod =
        static_cast<std::uint64_t>(n_slope) * static_cast<std::uint64_t>(n_intercept);
    if (prod <= max_cells) return;
    const double scale =
        std::sqrt(static_cast<double>(max_cells) / static_cast<double>(prod));
    n_slope = std::max(1, static_cast<int>(static_cast<double>(n_slope) * scale));
    n_intercept = std::max(1, static_cast<int>(static_cast<double>(n_intercept) * scale));
    while (static_cast<std::uint64_t>(n_slope) * static_cast<std::uint64_t>(n_intercept) >
           max_cells) {
        if (n_intercept > 1) {
            --n_intercept;
        } else {
            --n_slope;
        }
    }
}

}  // namespace

SubdivisionChoice recommend_subdivision(const ConvexPolygon& poly,
                                        std::uint64_t max_cells) {
    if (max_cells < 4) throw std::invalid_argument("max_cells must be at least 4");
    const int n = static_cast<int>(poly.size());
    const BoundingBox2 box = bounding_box(poly);
    const double a = std::max(box.half_x, box.half_y);

    std::vector<double> ys, xs, kq_slopes, mp_slopes;
    for (std::size_t e = 0; e < poly.size(); ++e) {
        ys.push_back(poly.vertex(e).y);
        xs.push_back(poly.vertex(e).x);
        const Point2 d = poly.edge_end(e) - poly.edge_start(e);
        if (std::abs(d.y) <= std::abs(d.x)) {
            kq_slopes.push_back(d.y / d.x);
        } else {
            mp_slopes.push_back(d.x / d.y);
        }
    }

    SubdivisionChoice c;
    const double dy = min_positive_gap(ys);
    if (dy > 0.0) {
        c.n_q = criterion_count(a, dy);
    } else {
        c.n_q = n;
        c.q_defaulted = true;
    }
    const double dx = min_positive_gap(xs);
    if (dx > 0.0) {
        c.n_p = criterion_count(a, dx);
    } else {
        c.n_p = n;
        c.p_defaulted = true;
    }
    const double dk = kq_slopes.size() >= 2 ? min_positive_gap(kq_slopes) : 0.0;
    if (dk > 0.0) {
        c.n_k = criterion_count(1.0, dk);
    } else {
        c.n_k = n;
        c.k_defaulted = true;
    }
    const double dm = mp_slopes.size() >= 2 ? min_positive_gap(mp_slopes) : 0.0;
    if (dm > 0.0) {
        c.n_m = criterion_count(1.0, dm);
    } else {
        c.n_m = n;
        c.m_defaulted = true;
    }

    cap_pair(c.n_k, c.n_q, max_cells);
    cap_pair(c.n_m, c.n_p, max_cells);
    return c;
}

SubdivisionChoice adequate_subdivision(int n) {
    if (n < 1) throw std::invalid_argument("region size must be at least 1");
    SubdivisionChoice c;
    c.n_k = n;
    c.n_q = 10 * n;
    c.n_m = n;
    c.n_p = 10 * n;
    return c;
}

bool edge_interferes_cell(Point2 a, Point2 b, const CellRect& cell, Branch branch,
                          double tol) {
    double da = a.x, ca = a.y;
    double db = b.x, cb = b.y;
    if (branch == Branch::MP) {
        std::swap(da, ca);
        std::swap(db, cb);
    }
    const double ss[2] = {cell.slope_lo, cell.slope_hi};
    const double qq[2] = {cell.intercept_lo, cell.intercept_hi};
    bool all_pos = true;
    bool all_neg = true;
    for (const double s : ss) {
        for (const double q : qq) {
            const double ra = ca - s * da - q;
            const double rb = cb - s * db - q;
            all_pos = all_pos && ra > tol && rb > tol;
            all_neg = all_neg && ra < -tol && rb < -tol;
        }
    }
    return !(all_pos || all_neg);
}

namespace {

SemidualGrid build_grid(const ConvexPolygon& poly, const BoundingBox2& box,
                        Branch branch, int n_slope, int n_intercept, double tol,
                        OpCounter& ops, std::uint64_t& entries) {
    SemidualGrid grid;
    grid.branch = branch;
    grid.n_slope = n_slope;
    grid.n_intercept = n_intercept;
    grid.h = box.h;
    grid.cells.assign(
        static_cast<std::size_t>(n_slope) * static_cast<std::size_t>(n_intercept), {});

    for (std::size_t e = 0; e < poly.size(); ++e) {
        const Point2 a = poly.edge_start(e) - box.center;
        const Point2 b = poly.edge_end(e) - box.center;
        ops.add(4, 0, 4, 0, 0);
        detail::for_each_interfering_range(
            a, b, branch, n_slope, n_intercept, box.h, tol, ops,
            [&](int j, int first, int last) {
                for (int i = first; i <= last; ++i) {
                    grid.cells[static_cast<std::size_t>(i) *
                                   static_cast<std::size_t>(n_slope) +
                               static_cast<std::size_t>(j)]
                        .push_back(static_cast<std::uint32_t>(e));
                }
                const auto count = static_cast<std::uint64_t>(last - first + 1);
                entries += count;
                ops.add(count, 0, 0, 0, 0);
            });
    }
    return grid;
}

}  // namespace

SemidualClipper2D build_clipper_2d(const ConvexPolygon& poly, int n_k, int n_q,
                                   int n_m, int n_p, std::uint64_t budget) {
    if (n_k < 1 || n_q < 1 || n_m < 1 || n_p < 1) {
        throw std::invalid_argument("subdivision counts must be at least 1");
    }
    const std::uint64_t cells =
        static_cast<std::uint64_t>(n_k) * static_cast<std::uint64_t>(n_q) +
        static_cast<std::uint64_t>(n_m) * static_cast<std::uint64_t>(n_p);
    if (cells > budget / poly.size()) {
        throw std::runtime_error("subdivision too fine");
    }

    const auto start = std::chrono::steady_clock::now();
    SemidualClipper2D clipper;
    clipper.polygon = poly;
    clipper.box = bounding_box(poly);
    const double tol = poly.eps();
    clipper.grid_kq = build_grid(poly, clipper.box, Branch::KQ, n_k, n_q, tol,
                                 clipper.build_ops, clipper.ael_entries);
    clipper.grid_mp = build_grid(poly, clipper.box, Branch::MP, n_m, n_p, tol,
                                 clipper.build_ops, clipper.ael_entries);
    clipper.build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return clipper;
}

std::optional<CellIndex> locate_cell(const SemidualGrid& grid, const LineRep& rep) {
    if (std::abs(rep.intercept) > grid.h) return std::nullopt;
    int i = static_cast<int>(
        std::floor((rep.intercept + grid.h) * static_cast<double>(grid.n_intercept) /
                   (2.0 * grid.h)));
    int j = static_cast<int>(
        std::floor((rep.slope + 1.0) * static_cast<double>(grid.n_slope) / 2.0));
    if (i >= grid.n_intercept) i = grid.n_intercept - 1;
    if (j >= grid.n_slope) j = grid.n_slope - 1;
    if (i < 0) i = 0;
    if (j < 0) j = 0;
    return CellIndex{i, j};
}

ClipResult clip_o1_2d(const SemidualClipper2D& clipper, const Segment2& seg,
                      OpCounter* counter) {
    OpCounter scratch;
    OpCounter& ops = counter ? *counter : scratch;
    const ConvexPolygon& poly = clipper.polygon;

    const double dx = seg.p1.x - seg.p0.x;
    const double dy = seg.p1.y - seg.p0.y;
    if (dx == 0.0 && dy == 0.0) throw std::invalid_argument("zero-length segment");
    const double ax = seg.p0.x - clipper.box.center.x;
    const double ay = seg.p0.y - clipper.box.center.y;
    ops.add(4, 0, 4, 0, 0);

    // slope from world differences (translation cancels), intercept in the
    // box-centered frame
    Branch branch;
    double slope, intercept;
    ops.add(0, 3, 0, 0, 0);
    if (std::abs(dy) <= std::abs(dx)) {
        branch = Branch::KQ;
        slope = dy / dx;
        intercept = ay - slope * ax;
    } else {
        branch = Branch::MP;
        slope = dx / dy;
        intercept = ax - slope * ay;
    }
    ops.add(2, 0, 1, 1, 1);

    const SemidualGrid& grid =
        branch == Branch::KQ ? clipper.grid_kq : clipper.grid_mp;
    ops.add(0, 2, 0, 0, 0);
    if (std::abs(intercept) > grid.h) return ClipResult::empty();
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

    const double eps = poly.eps();
    const double dlen = std::sqrt(dx * dx + dy * dy);
    const double eps_t = eps / dlen;
    ops.add(3, 0, 1, 2, 3);  // sqrt counted as a div

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

    for (const std::uint32_t e : grid.cell(i, j)) {
        const Point2& va = poly.edge_start(e);
        const Point2& vb = poly.edge_end(e);
        const double sa = dx * (va.y - seg.p0.y) - dy * (va.x - seg.p0.x);
        const double sb = dx * (vb.y - seg.p0.y) - dy * (vb.x - seg.p0.x);
        ops.add(2, 4, 6, 4, 0);
        if ((sa > 0.0 && sb > 0.0) || (sa < 0.0 && sb < 0.0)) continue;
        ops.add(0, 2, 0, 0, 0);
        if (sa == 0.0 && sb == 0.0) {
            // carrier collinear with the edge: both endpoints cross
            const double dd = dx * dx + dy * dy;
            push_t(((va.x - seg.p0.x) * dx + (va.y - seg.p0.y) * dy) / dd);
            push_t(((vb.x - seg.p0.x) * dx + (vb.y - seg.p0.y) * dy) / dd);
            ops.add(3, 0, 6, 8, 3);
            continue;
        }
        const Point2& nrm = poly.edge_normal(e);
        const double den = nrm.x * dx + nrm.y * dy;
        const double num = nrm.x * (va.x - seg.p0.x) + nrm.y * (va.y - seg.p0.y);
        ops.add(2, 1, 4, 4, 0);
        if (den == 0.0) continue;
        push_t(num / den);
        ops.add(0, 0, 0, 0, 1);
    }

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

    if (nt == 1) {
        // a single distinct crossing is only legitimate at a vertex tangency
        const double px = seg.p0.x + t1 * dx;
        const double py = seg.p0.y + t1 * dy;
        bool near_vertex = false;
        for (const Point2& v : poly.vertices()) {
            if (std::abs(px - v.x) <= 10.0 * eps && std::abs(py - v.y) <= 10.0 * eps) {
                near_vertex = true;
                break;
            }
        }
        ops.add(3, 2 * static_cast<std::uint64_t>(poly.size()), 2, 2, 0);
        if (!near_vertex) throw std::logic_error("AEL not conservative");
    }

    const double lo = t1 > 0.0 ? t1 : 0.0;
    const double hi = t2 < 1.0 ? t2 : 1.0;
    ops.add(2, 3, 0, 0, 0);
    if (lo > hi) return ClipResult::empty();
    return ClipResult::interval(lo, hi);
}

AelStatistics ael_statistics(const SemidualClipper2D& clipper) {
    AelStatistics stats;
    const auto grid_stats = [](const SemidualGrid& grid) {
        AelGridStats s;
        std::uint64_t total = 0;
        for (const auto& cell : grid.cells) {
            const auto len = cell.size();
            total += len;
            s.max = std::max(s.max, static_cast<int>(len));
            if (s.histogram.size() <= len) s.histogram.resize(len + 1, 0);
            ++s.histogram[len];
        }
        s.mean = grid.cells.empty()
                     ? 0.0
                     : static_cast<double>(total) / static_cast<double>(grid.cells.size());
        return s;
    };
    stats.kq = grid_stats(clipper.grid_kq);
    stats.mp = grid_stats(clipper.grid_mp);
    stats.entries = clipper.ael_entries;
    stats.build_cost = weighted_cost(clipper.build_ops);
    stats.build_seconds = clipper.build_seconds;
    return stats;
}

}  // namespace sdclip
