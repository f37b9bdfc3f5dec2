#pragma once

/// Source-level operation tallies and the weighted cost model that compares
/// clipper implementations machine-independently.
///
/// Counting discipline: one tick per scalar source operation in the five
/// classes assign (:=), compare (<), addsub (+/-), mul (*), div (/). Loop
/// bookkeeping and pointer math are not counted; abs counts as one compare,
/// floor as one assign, sqrt as one div (the only operation outside the five
/// classes); word-level bitmap AND counts as one assign per word.

#include <cstdint>

namespace sdclip {

struct OpCounter {
    std::uint64_t assigns = 0;
    std::uint64_t compares = 0;
    std::uint64_t addsubs = 0;
    std::uint64_t muls = 0;
    std::uint64_t divs = 0;

    void add(std::uint64_t a, std::uint64_t c, std::uint64_t s,
             std::uint64_t m, std::uint64_t d) {
        assigns += a;
        compares += c;
        addsubs += s;
        muls += m;
        divs += d;
    }

    OpCounter& operator+=(const OpCounter& o) {
        add(o.assigns, o.compares, o.addsubs, o.muls, o.divs);
        return *this;
    }
};

/// Per-class time weights (relative units; only ratios matter downstream).
struct CostModel {
    double assign = 33.0;
    double compare = 50.0;
    double addsub = 16.0;
    double mul = 20.0;
    double div = 114.0;
};

double weighted_cost(const OpCounter& counter, const CostModel& model = {});

struct Efficiency {
    double v1 = 0.0;  ///< reference cost / constant-time cost, no preprocessing
    double v2 = 0.0;  ///< same with preprocessing amortized over the line count
};

/// Closed-form model efficiency for a region of size n (vertices in 2D,
/// facets in 3D). 2D: v1 = (590 + 621 n) / 2020; 3D: v1 = 777 n / 3042.
/// v2 amortizes prep_cost over line_count lines. dimension must be 2 or 3.
Efficiency theoretical_efficiency(int n, int dimension, double prep_cost = 0.0,
                                  double line_count = 1.0);

}  // namespace sdclip
