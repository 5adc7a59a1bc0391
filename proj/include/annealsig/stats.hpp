#pragma once

#include <vector>

namespace annealsig {

struct BoxStats {
    double median = 0.0;
    double lower_quartile = 0.0;
    double upper_quartile = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
};

// Quantile at position q (N - 1); off-grid positions take the mean of the two neighbours.
// Whiskers reach the most extreme samples within 1.5 IQR of the box.
double quantile(std::vector<double> samples, double q);
BoxStats box_stats(const std::vector<double>& samples);

}  // namespace annealsig
