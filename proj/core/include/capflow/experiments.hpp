#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "capflow/capacity.hpp"
#include "capflow/cutflow.hpp"
#include "capflow/fpp.hpp"
#include "capflow/polygon.hpp"
#include "capflow/rational.hpp"
#include "capflow/stats.hpp"

namespace capflow {

struct RunConfig {
    DistributionSpec spec = DistributionSpec::exponential(Rational(1));
    ConvexPolygon polygon = centered_square(Rational(1));
    std::vector<std::int64_t> n_grid;
    std::int64_t reps = 2;
    std::uint64_t master_seed = 0;
    Rational epsilon{1, 5};
    Rational p_open{9, 10};
    std::int64_t scale = kDefaultScale;
    MincutOptions mincut;
    std::int64_t mu_n = 64;
    std::int64_t mu_reps = 30;
    /// Called after every instance with its field, source and result.
    std::function<void(const CapacityField&, const SiteSet&, const MaxFlowResult&)> observer;
};

/// Throws InvalidArgument on a malformed config (empty or unsorted grid,
/// reps < 1, epsilon outside (0, 1), polygon not around the origin, ...).
void validate(const RunConfig& cfg);

/// Human-readable warnings about theorem hypotheses that the config violates.
std::vector<std::string> hypothesis_warnings(const RunConfig& cfg, bool percolation);

/// Seed streams. Labels 1 and 3 index instances; label 2 feeds the
/// time-constant pass, so the two never share randomness.
std::uint64_t instance_seed(std::uint64_t master, std::int64_t n, std::int64_t replicate);
std::uint64_t disjoint_seed(std::uint64_t master, std::int64_t n, std::int64_t replicate);
std::uint64_t mu_seed(std::uint64_t master, IntVec direction);

/// Time-constant table for every side direction of `polygon`. Laws whose time
/// constant is known exactly (constant capacities) get the closed form.
MuTable polygon_mu_table(const DistributionSpec& spec, const ConvexPolygon& polygon, std::uint64_t master,
                         std::int64_t mu_n, std::int64_t mu_reps, std::int64_t scale);

struct ConvergenceRecord {
    std::int64_t n = 0;
    std::int64_t replicate = 0;
    std::int64_t mincut_micro = 0;
    Rational target;  // n * I_hat(A), micro-units
    double ratio = 0.0;
    bool stabilized = false;
    bool budget_exceeded = false;
    double seconds = 0.0;
};

struct ConvergenceRun {
    MuTable table;
    Rational i_hat;  // I_hat(A), micro-units
    std::vector<ConvergenceRecord> records;  // sorted by (n, replicate)
    std::vector<std::string> warnings;
};

ConvergenceRun run_convergence(const RunConfig& cfg);

struct TailPoint {
    std::int64_t n = 0;
    std::int64_t reps = 0;
    std::int64_t upper_hits = 0;  // ratio >= 1 + eps
    std::int64_t lower_hits = 0;  // ratio <= 1 - eps
    double frequency = 0.0;
    Interval wilson;
};

struct TailRun {
    ConvergenceRun base;
    std::vector<TailPoint> points;
    /// Trend of the replicate deviation indicators ordered by n.
    MannKendall trend;
    bool nonincreasing = false;
};

TailRun run_tail(const RunConfig& cfg);
/// Tail summary of existing records at tolerance eps.
TailRun tail_from(ConvergenceRun base, const Rational& eps);

struct DisjointRecord {
    std::int64_t n = 0;
    std::int64_t replicate = 0;
    std::int64_t count = 0;
    std::int64_t cut_value = 0;
    Rational target;  // n * I_hat(A) in bond units
    double ratio = 0.0;
    bool stabilized = false;
    bool budget_exceeded = false;
    double seconds = 0.0;
};

struct DisjointRun {
    MuTable table;
    Rational i_hat;
    std::vector<DisjointRecord> records;
    std::vector<std::string> warnings;
};

DisjointRun run_disjoint(const RunConfig& cfg);

struct SummaryRow {
    std::int64_t n = 0;
    std::int64_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
    double deviation_frequency = 0.0;  // ratio outside (1 - eps, 1 + eps)
};

std::vector<SummaryRow> summarize(const std::vector<ConvergenceRecord>& records, const Rational& eps);

}  // namespace capflow
