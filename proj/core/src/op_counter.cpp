#include "sdclip/op_counter.hpp"

#include <stdexcept>

namespace sdclip {

double weighted_cost(const OpCounter& counter, const CostModel& model) {
    return static_cast<double>(counter.assigns) * model.assign +
           static_cast<double>(counter.compares) * model.compare +
           static_cast<double>(counter.addsubs) * model.addsub +
           static_cast<double>(counter.muls) * model.mul +
           static_cast<double>(counter.divs) * model.div;
}

Efficiency theoretical_efficiency(int n, int dimension, double prep_cost,
                                  double line_count) {
    if (dimension != 2 && dimension != 3) {
        throw std::invalid_argument("dimension must be 2 or 3");
    }
    if (n < 1) throw std::invalid_argument("region size must be at least 1");
    if (!(line_count > 0.0)) throw std::invalid_argument("line count must be positive");
    const double reference = dimension == 2 ? 590.0 + 621.0 * n : 777.0 * n;
    const double constant = dimension == 2 ? 2020.0 : 3042.0;
    Efficiency e;
    e.v1 = reference / constant;
    e.v2 = reference / (constant + prep_cost / line_count);
    return e;
}

}  // namespace sdclip
