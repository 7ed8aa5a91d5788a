#include "capflow/stats.hpp"

#include <cmath>
#include <map>

#include "capflow/error.hpp"

namespace capflow {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

Interval wilson_interval(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0 || k < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "wilson_interval needs 0 <= k <= n, n > 0");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return Interval{k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

int sign(double d) { return (d > 0.0) - (d < 0.0); }

double tie_term(std::span<const double> xs) {
    std::map<double, std::int64_t> counts;
    for (double x : xs) ++counts[x];
    double t = 0.0;
    for (const auto& [value, c] : counts) {
        const double cc = static_cast<double>(c);
        t += cc * (cc - 1.0) * (2.0 * cc + 5.0);
    }
    return t;
}

}  // namespace

MannKendall mann_kendall(std::span<const double> time, std::span<const double> values) {
    if (time.size() != values.size()) throw Error(ErrorCode::InvalidArgument, "mann_kendall: size mismatch");
    const std::size_t n = values.size();
    MannKendall out;
    if (n < 2) return out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int dt = sign(time[j] - time[i]);
            if (dt == 0) continue;
            out.s += dt * sign(values[j] - values[i]);
        }
    }
    // Variance of S under H0 for two tied rankings (Kendall tau-b form with
    // both the value ties and the time groups).
    const double nn = static_cast<double>(n);
    const double v0 = nn * (nn - 1.0) * (2.0 * nn + 5.0);
    const double tv = tie_term(values);
    const double tt = tie_term(time);
    double pv = 0.0;
    double pt = 0.0;
    {
        std::map<double, std::int64_t> cv;
        std::map<double, std::int64_t> ct;
        for (double x : values) ++cv[x];
        for (double x : time) ++ct[x];
        double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
        for (const auto& [k, c] : cv) {
            const double cc = static_cast<double>(c);
            a1 += cc * (cc - 1.0) * (cc - 2.0);
            a2 += cc * (cc - 1.0);
        }
        for (const auto& [k, c] : ct) {
            const double cc = static_cast<double>(c);
            b1 += cc * (cc - 1.0) * (cc - 2.0);
            b2 += cc * (cc - 1.0);
        }
        pv = (nn > 2.0) ? a1 * b1 / (9.0 * nn * (nn - 1.0) * (nn - 2.0)) : 0.0;
        pt = a2 * b2 / (2.0 * nn * (nn - 1.0));
    }
    out.variance = (v0 - tv - tt) / 18.0 + pv + pt;
    if (out.variance <= 0.0) return out;
    const double sd = std::sqrt(out.variance);
    if (out.s > 0.0) out.z = (out.s - 1.0) / sd;
    else if (out.s < 0.0) out.z = (out.s + 1.0) / sd;
    out.p_decreasing = normal_cdf(out.z);
    out.p_increasing = 1.0 - normal_cdf(out.z);
    return out;
}

}  // namespace capflow
