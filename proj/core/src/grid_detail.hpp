#pragma once

/// Internal build machinery shared by the 2D and 3D grid construction:
/// uniform cell rectangles and the per-column interference range scan.

#include <algorithm>
#include <cmath>
#include <utility>

#include "sdclip/geometry.hpp"
#include "sdclip/op_counter.hpp"
#include "sdclip/semidual2.hpp"

namespace sdclip::detail {

inline CellRect uniform_cell_rect(int n_slope, int n_intercept, double h, int i, int j) {
    const double slope_step = 2.0 / n_slope;
    const double intercept_step = 2.0 * h / n_intercept;
    CellRect r;
    r.slope_lo = -1.0 + j * slope_step;
    r.slope_hi = -1.0 + (j + 1) * slope_step;
    r.intercept_lo = -h + i * intercept_step;
    r.intercept_hi = -h + (i + 1) * intercept_step;
    return r;
}

/// Calls emit(j, i_first, i_last) for every slope column j whose interfering
/// intercept cells are nonempty, for one edge a-b (box-centered frame).
///
/// Within a column the corner residuals are c - slope*d - intercept with the
/// slope fixed to the column bounds, so each cell's eight residuals are
/// {v - intercept_lo, v - intercept_hi} over the four v = c - slope*d
/// values. A cell is clear above exactly when min(v) - intercept_hi > tol
/// and clear below exactly when max(v) - intercept_lo < -tol; both cutoffs
/// are monotone in the cell index, so interference is one contiguous range.
/// The range ends are found by a floor-based guess corrected with short
/// walks that evaluate the same expressions edge_interferes_cell uses, which
/// keeps this fast path bit-identical to testing every cell.
template <typename EmitFn>
void for_each_interfering_range(Point2 a, Point2 b, Branch branch, int n_slope,
                                int n_intercept, double h, double tol,
                                OpCounter& ops, EmitFn&& emit) {
    double da = a.x, ca = a.y;
    double db = b.x, cb = b.y;
    if (branch == Branch::MP) {
        std::swap(da, ca);
        std::swap(db, cb);
    }
    const double slope_step = 2.0 / n_slope;
    const double intercept_step = 2.0 * h / n_intercept;
    ops.add(2, 0, 0, 1, 2);

    const auto intercept_lo = [&](int i) { return -h + i * intercept_step; };
    const auto intercept_hi = [&](int i) { return -h + (i + 1) * intercept_step; };

    for (int j = 0; j < n_slope; ++j) {
        const double s_lo = -1.0 + j * slope_step;
        const double s_hi = -1.0 + (j + 1) * slope_step;
        const double va0 = ca - s_lo * da;
        const double va1 = ca - s_hi * da;
        const double vb0 = cb - s_lo * db;
        const double vb1 = cb - s_hi * db;
        const double min_v = std::min(std::min(va0, va1), std::min(vb0, vb1));
        const double max_v = std::max(std::max(va0, va1), std::max(vb0, vb1));
        ops.add(8, 6, 6, 6, 0);

        // first cell that is not clear above
        const double top_guess = std::floor((min_v - tol + h) / intercept_step) - 1.0;
        int first = top_guess < 0.0 ? 0
                    : top_guess > static_cast<double>(n_intercept)
                        ? n_intercept
                        : static_cast<int>(top_guess);
        ops.add(2, 2, 3, 0, 1);
        while (first > 0 && !(min_v - intercept_hi(first - 1) > tol)) {
            --first;
            ops.add(1, 2, 3, 1, 0);
        }
        while (first < n_intercept && min_v - intercept_hi(first) > tol) {
            ++first;
            ops.add(1, 2, 3, 1, 0);
        }

        // last cell that is not clear below
        const double bot_guess = std::floor((max_v + tol + h) / intercept_step);
        int last = bot_guess < 0.0 ? -1
                   : bot_guess > static_cast<double>(n_intercept - 1)
                       ? n_intercept - 1
                       : static_cast<int>(bot_guess);
        ops.add(2, 2, 2, 0, 1);
        while (last < n_intercept - 1 && !(max_v - intercept_lo(last + 1) < -tol)) {
            ++last;
            ops.add(1, 2, 2, 1, 0);
        }
        while (last >= 0 && max_v - intercept_lo(last) < -tol) {
            --last;
            ops.add(1, 2, 2, 1, 0);
        }

        if (first <= last) emit(j, first, last);
    }
}

}  // namespace sdclip::detail
