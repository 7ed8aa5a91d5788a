#include "capflow/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <optional>

#include "capflow/error.hpp"
#include "capflow/functional.hpp"
#include "capflow/seed.hpp"

namespace capflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double ratio_of(std::int64_t value, const Rational& target) {
    if (target.num() == 0) return value == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(value) / target.to_double();
}

// Farthest lattice point the time-constant pass may target.
constexpr std::int64_t kMaxMuReach = 4096;

std::int64_t steps_for(IntVec v, std::int64_t mu_n) {
    const std::int64_t longest = std::max(std::abs(v.x), std::abs(v.y));
    const std::int64_t steps = std::max<std::int64_t>(4, mu_n / longest);
    if (steps * longest > kMaxMuReach) {
        throw Error(ErrorCode::InvalidArgument, "side direction (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                                                    ") is too long to estimate its time constant");
    }
    return steps;
}

std::optional<Rational> exact_l1_scale(const DistributionSpec& spec, std::int64_t scale) {
    using Kind = DistributionSpec::Kind;
    if (spec.kind == Kind::Constant) return Rational((spec.first * Rational(scale)).round());
    if (spec.kind == Kind::Bernoulli && spec.first == Rational(1)) return Rational(scale);
    if (spec.kind == Kind::Bernoulli && spec.first == Rational(0)) return Rational(0);
    if (spec.kind == Kind::Uniform && spec.first == spec.second) return Rational((spec.first * Rational(scale)).round());
    return std::nullopt;
}

bool deviates(std::int64_t value, const Rational& target, const Rational& eps) {
    const Rational v(value);
    return v >= target * (Rational(1) + eps) || v <= target * (Rational(1) - eps);
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.n_grid.empty()) throw Error(ErrorCode::InvalidArgument, "n grid is empty");
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        if (cfg.n_grid[i] < 1) throw Error(ErrorCode::InvalidArgument, "grid values must be >= 1");
        if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "n grid must be strictly increasing");
        }
    }
    if (cfg.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
    if (!(Rational(0) < cfg.epsilon && cfg.epsilon < Rational(1))) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
    }
    if (cfg.p_open < Rational(0) || cfg.p_open > Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "p_open must lie in [0, 1]");
    }
    if (cfg.scale < 1) throw Error(ErrorCode::InvalidArgument, "scale must be >= 1");
    if (cfg.mu_n < 4 || cfg.mu_reps < 2) throw Error(ErrorCode::InvalidArgument, "mu pass needs n >= 4, reps >= 2");
    if (!contains_origin_interior(cfg.polygon)) {
        throw Error(ErrorCode::InvalidArgument, "polygon must contain the origin in its interior");
    }
}

std::vector<std::string> hypothesis_warnings(const RunConfig& cfg, bool percolation) {
    std::vector<std::string> out;
    if (percolation) {
        if (cfg.p_open <= Rational(1, 2)) {
            out.push_back("p_open = " + cfg.p_open.str() + " is not supercritical (p_c = 1/2)");
        }
        return out;
    }
    const TheoremHypotheses h = validate_for_theorems(cfg.spec);
    if (!h.zero_mass_ok) out.push_back("m(0) = " + h.zero_mass.str() + " is not below 1/2");
    if (!h.exp_moment_ok) out.push_back("law has no finite exponential moment");
    return out;
}

std::uint64_t instance_seed(std::uint64_t master, std::int64_t n, std::int64_t replicate) {
    return derive_seed(master, {1, n, replicate});
}

std::uint64_t mu_seed(std::uint64_t master, IntVec direction) {
    return derive_seed(master, {2, direction.x, direction.y});
}

std::uint64_t disjoint_seed(std::uint64_t master, std::int64_t n, std::int64_t replicate) {
    return derive_seed(master, {3, n, replicate});
}

MuTable polygon_mu_table(const DistributionSpec& spec, const ConvexPolygon& polygon, std::uint64_t master,
                         std::int64_t mu_n, std::int64_t mu_reps, std::int64_t scale) {
    if (auto l1 = exact_l1_scale(spec, scale)) return MuTable::exact_l1(*l1);
    MuTable table;
    for (const IntVec& dir : side_directions(polygon)) {
        table.insert(estimate_mu(spec, dir, steps_for(dir, mu_n), mu_reps, mu_seed(master, dir), scale));
    }
    return table;
}

ConvergenceRun run_convergence(const RunConfig& cfg) {
    validate(cfg);
    ConvergenceRun run;
    run.warnings = hypothesis_warnings(cfg, false);
    run.table = polygon_mu_table(cfg.spec, cfg.polygon, cfg.master_seed, cfg.mu_n, cfg.mu_reps, cfg.scale);
    run.i_hat = i_functional(cfg.polygon, run.table).value;

    for (std::int64_t n : cfg.n_grid) {
        const SiteSet source = sites_in_scaled_polygon(cfg.polygon, n);
        const Rational target = run.i_hat * Rational(n);
        for (std::int64_t r = 0; r < cfg.reps; ++r) {
            const auto start = Clock::now();
            const CapacityField field(cfg.spec, instance_seed(cfg.master_seed, n, r), cfg.scale);
            const MaxFlowResult res = mincut_infinity(field, source, cfg.mincut);
            if (cfg.observer) cfg.observer(field, source, res);
            ConvergenceRecord rec;
            rec.n = n;
            rec.replicate = r;
            rec.mincut_micro = res.value;
            rec.target = target;
            rec.ratio = ratio_of(res.value, target);
            rec.stabilized = res.stabilized;
            rec.budget_exceeded = res.budget_exceeded;
            rec.seconds = seconds_since(start);
            run.records.push_back(rec);
        }
    }
    return run;
}

TailRun tail_from(ConvergenceRun base, const Rational& eps) {
    TailRun out;
    std::vector<double> time;
    std::vector<double> hits;
    for (const ConvergenceRecord& rec : base.records) {
        if (out.points.empty() || out.points.back().n != rec.n) {
            out.points.emplace_back();
            out.points.back().n = rec.n;
        }
        TailPoint& pt = out.points.back();
        ++pt.reps;
        const Rational v(rec.mincut_micro);
        const bool up = v >= rec.target * (Rational(1) + eps);
        const bool down = v <= rec.target * (Rational(1) - eps);
        pt.upper_hits += up;
        pt.lower_hits += down;
        time.push_back(static_cast<double>(rec.n));
        hits.push_back(up || down ? 1.0 : 0.0);
    }
    out.nonincreasing = true;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        TailPoint& pt = out.points[i];
        const std::int64_t k = pt.upper_hits + pt.lower_hits;
        pt.frequency = static_cast<double>(k) / static_cast<double>(pt.reps);
        pt.wilson = wilson_interval(k, pt.reps);
        if (i > 0 && pt.frequency > out.points[i - 1].frequency) out.nonincreasing = false;
    }
    out.trend = mann_kendall(time, hits);
    out.base = std::move(base);
    return out;
}

TailRun run_tail(const RunConfig& cfg) {
    ConvergenceRun base = run_convergence(cfg);
    return tail_from(std::move(base), cfg.epsilon);
}

DisjointRun run_disjoint(const RunConfig& cfg) {
    validate(cfg);
    DisjointRun run;
    run.warnings = hypothesis_warnings(cfg, true);
    run.table = polygon_mu_table(DistributionSpec::bernoulli(cfg.p_open), cfg.polygon, cfg.master_seed, cfg.mu_n,
                                 cfg.mu_reps, 1);
    run.i_hat = i_functional(cfg.polygon, run.table).value;

    for (std::int64_t n : cfg.n_grid) {
        const SiteSet source = sites_in_scaled_polygon(cfg.polygon, n);
        const Rational target = run.i_hat * Rational(n);
        for (std::int64_t r = 0; r < cfg.reps; ++r) {
            const auto start = Clock::now();
            const DisjointPaths dp =
                disjoint_paths_to_infinity(cfg.p_open, source, disjoint_seed(cfg.master_seed, n, r), cfg.mincut);
            if (cfg.observer) cfg.observer(open_bond_field(cfg.p_open, disjoint_seed(cfg.master_seed, n, r)), source, dp.flow);
            DisjointRecord rec;
            rec.n = n;
            rec.replicate = r;
            rec.count = dp.count;
            rec.cut_value = dp.flow.value;
            rec.target = target;
            rec.ratio = ratio_of(dp.count, target);
            rec.stabilized = dp.flow.stabilized;
            rec.budget_exceeded = dp.flow.budget_exceeded;
            rec.seconds = seconds_since(start);
            run.records.push_back(rec);
        }
    }
    return run;
}

std::vector<SummaryRow> summarize(const std::vector<ConvergenceRecord>& records, const Rational& eps) {
    std::vector<SummaryRow> rows;
    std::size_t i = 0;
    while (i < records.size()) {
        std::size_t j = i;
        std::vector<double> ratios;
        std::int64_t dev = 0;
        while (j < records.size() && records[j].n == records[i].n) {
            ratios.push_back(records[j].ratio);
            dev += deviates(records[j].mincut_micro, records[j].target, eps);
            ++j;
        }
        SummaryRow row;
        row.n = records[i].n;
        row.count = static_cast<std::int64_t>(ratios.size());
        row.mean = mean(ratios);
        row.sd = sample_sd(ratios);
        row.min = *std::min_element(ratios.begin(), ratios.end());
        row.max = *std::max_element(ratios.begin(), ratios.end());
        row.deviation_frequency = static_cast<double>(dev) / static_cast<double>(row.count);
        rows.push_back(row);
        i = j;
    }
    return rows;
}

}  // namespace capflow
