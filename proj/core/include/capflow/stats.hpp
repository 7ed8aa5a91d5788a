#pragma once

#include <cstdint>
#include <span>

namespace capflow {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for k successes out of n at the given normal quantile.
Interval wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

struct MannKendall {
    double s = 0.0;          // sum of sign(x_j - x_i) over i < j
    double variance = 0.0;   // tie-corrected
    double z = 0.0;          // continuity-corrected statistic
    double p_decreasing = 1.0;  // one-sided p-value against a decreasing trend
    double p_increasing = 1.0;  // one-sided p-value against an increasing trend
};

/// Mann-Kendall trend test on an ordered series. Groups of equal `time` values
/// are allowed: pairs sharing a time are skipped, so replicate observations at
/// each grid point can be tested together.
MannKendall mann_kendall(std::span<const double> time, std::span<const double> values);

double normal_cdf(double z);

}  // namespace capflow
