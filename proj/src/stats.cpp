#include "kirigami/stats.hpp"

#include <algorithm>
#include <cmath>

namespace kirigami {

ProportionEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    ProportionEstimate e;
    e.successes = successes;
    e.trials = trials;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.value = p;
    e.lower = std::max(0.0, center - half);
    e.upper = std::min(1.0, center + half);
    if (successes == 0) e.lower = 0.0;
    if (successes == trials) e.upper = 1.0;
    return e;
}

double IntersectionTally::mean() const {
    return samples ? static_cast<double>(total) / static_cast<double>(samples) : 0.0;
}

double IntersectionTally::standard_error() const {
    if (samples < 2) return 0.0;
    const double n = static_cast<double>(samples);
    const double m = mean();
    const double var = (static_cast<double>(total_squares) - n * m * m) / (n - 1.0);
    return std::sqrt(std::max(0.0, var) / n);
}

double IntersectionTally::admissible_fraction() const {
    return samples ? static_cast<double>(admissible) / static_cast<double>(samples) : 0.0;
}

}  // namespace kirigami
