#include "annealsig/stats.hpp"

#include <algorithm>
#include <cmath>

#include "annealsig/errors.hpp"

namespace annealsig {

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw RangeError("no samples");
    if (!(q >= 0.0 && q <= 1.0)) throw RangeError("quantile outside [0, 1]");
    std::sort(v.begin(), v.end());
    // midpoint rule: between two order statistics take their mean
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return 0.5 * (v[lo] + v[hi]);
}

BoxStats box_stats(const std::vector<double>& samples) {
    if (samples.empty()) throw RangeError("box statistics need at least one sample");
    for (double x : samples)
        if (!std::isfinite(x)) throw RangeError("non-finite sample");
    BoxStats b;
    b.median = quantile(samples, 0.5);
    b.lower_quartile = quantile(samples, 0.25);
    b.upper_quartile = quantile(samples, 0.75);
    const double iqr = b.upper_quartile - b.lower_quartile;
    const double lo = b.lower_quartile - 1.5 * iqr, hi = b.upper_quartile + 1.5 * iqr;
    b.whisker_low = b.lower_quartile;
    b.whisker_high = b.upper_quartile;
    for (double x : samples) {
        if (x < lo || x > hi) {
            b.outliers.push_back(x);
            continue;
        }
        b.whisker_low = std::min(b.whisker_low, x);
        b.whisker_high = std::max(b.whisker_high, x);
    }
    std::sort(b.outliers.begin(), b.outliers.end());
    return b;
}

}  // namespace annealsig
