#include <gtest/gtest.h>

#include <cmath>

#include "capflow/error.hpp"
#include "capflow/experiments.hpp"
#include "capflow/stats.hpp"

using namespace capflow;

namespace {

constexpr std::int64_t kUnit = kDefaultScale;

RunConfig constant_square(std::vector<std::int64_t> grid) {
    RunConfig cfg;
    cfg.spec = DistributionSpec::constant(Rational(1));
    cfg.polygon = centered_square(Rational(1));
    cfg.n_grid = std::move(grid);
    cfg.reps = 1;
    cfg.master_seed = 3;
    return cfg;
}

}  // namespace

TEST(Stats, MeanAndSd) {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    EXPECT_DOUBLE_EQ(mean(xs), 5.0);
    EXPECT_NEAR(sample_sd(xs), 2.138089935299395, 1e-12);
    EXPECT_EQ(sample_sd(std::vector<double>{1.0}), 0.0);
}

TEST(Stats, WilsonInterval) {
    const Interval i = wilson_interval(5, 10);
    EXPECT_NEAR(i.lo, 0.236593, 1e-5);
    EXPECT_NEAR(i.hi, 0.763407, 1e-5);
    const Interval z = wilson_interval(0, 200);
    EXPECT_EQ(z.lo, 0.0);
    EXPECT_NEAR(z.hi, 0.0188454, 1e-6);
    EXPECT_THROW(wilson_interval(3, 2), Error);
}

TEST(Stats, MannKendallNoTies) {
    // Strictly decreasing series of 10: S = -45, Var = 10*9*25/18 = 125.
    std::vector<double> t, v;
    for (int i = 0; i < 10; ++i) {
        t.push_back(i);
        v.push_back(10 - i);
    }
    const MannKendall mk = mann_kendall(t, v);
    EXPECT_EQ(mk.s, -45.0);
    EXPECT_DOUBLE_EQ(mk.variance, 125.0);
    EXPECT_NEAR(mk.z, -44.0 / std::sqrt(125.0), 1e-12);
    EXPECT_LT(mk.p_decreasing, 0.001);
}

TEST(Stats, MannKendallGroupedIndicators) {
    // Three groups of four indicators: hits drop from 4 to 2 to 0.
    const std::vector<double> t{8, 8, 8, 8, 16, 16, 16, 16, 32, 32, 32, 32};
    const std::vector<double> v{1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
    const MannKendall mk = mann_kendall(t, v);
    // Cross-group pairs: (8,16): 4*2 discordant; (8,32): 16; (16,32): 2*4 = 8.
    EXPECT_EQ(mk.s, -32.0);
    EXPECT_GT(mk.variance, 0.0);
    EXPECT_LT(mk.p_decreasing, 0.05);
    const MannKendall flat = mann_kendall(t, std::vector<double>(12, 1.0));
    EXPECT_EQ(flat.s, 0.0);
    EXPECT_EQ(flat.p_decreasing, 1.0);
}

TEST(Experiments, ConstantConvergenceClosedForm) {
    const ConvergenceRun run = run_convergence(constant_square({1, 2, 4}));
    ASSERT_EQ(run.records.size(), 3u);
    const double expected[] = {1.5, 1.25, 1.125};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& r = run.records[i];
        EXPECT_EQ(r.mincut_micro, 4 * (2 * r.n + 1) * kUnit);
        EXPECT_EQ(r.ratio, expected[i]);
        EXPECT_TRUE(r.stabilized);
    }
    EXPECT_EQ(run.i_hat, Rational(8 * kUnit));
}

TEST(Experiments, ConstantTails) {
    RunConfig cfg = constant_square({1});
    cfg.epsilon = Rational(1, 20);
    const TailRun low = run_tail(cfg);
    ASSERT_EQ(low.points.size(), 1u);
    EXPECT_EQ(low.points[0].frequency, 1.0);
    EXPECT_EQ(low.points[0].upper_hits, 1);

    cfg = constant_square({1, 2, 3});
    cfg.epsilon = Rational(3, 5);
    const TailRun high = run_tail(cfg);
    for (const TailPoint& p : high.points) EXPECT_EQ(p.frequency, 0.0);
    EXPECT_TRUE(high.nonincreasing);
}

TEST(Experiments, ReplayIsIdentical) {
    RunConfig cfg;
    cfg.spec = DistributionSpec::exponential(Rational(1));
    cfg.n_grid = {2, 4};
    cfg.reps = 3;
    cfg.master_seed = 9;
    cfg.mu_n = 8;
    cfg.mu_reps = 4;
    const ConvergenceRun a = run_convergence(cfg);
    const ConvergenceRun b = run_convergence(cfg);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].mincut_micro, b.records[i].mincut_micro);
        EXPECT_EQ(a.records[i].ratio, b.records[i].ratio);
        EXPECT_EQ(a.records[i].n, b.records[i].n);
        EXPECT_EQ(a.records[i].replicate, b.records[i].replicate);
    }
    EXPECT_EQ(a.i_hat, b.i_hat);
}

TEST(Experiments, RecordsMatchStandaloneMincut) {
    RunConfig cfg;
    cfg.spec = DistributionSpec::uniform(Rational(0), Rational(2));
    cfg.n_grid = {2, 3};
    cfg.reps = 2;
    cfg.master_seed = 17;
    cfg.mu_n = 8;
    cfg.mu_reps = 3;
    const ConvergenceRun run = run_convergence(cfg);
    for (const auto& r : run.records) {
        const CapacityField f(cfg.spec, instance_seed(cfg.master_seed, r.n, r.replicate));
        const MaxFlowResult m = mincut_infinity(f, sites_in_scaled_polygon(cfg.polygon, r.n));
        EXPECT_EQ(r.mincut_micro, m.value);
        EXPECT_GT(r.ratio, 0.0);
        EXPECT_TRUE(std::isfinite(r.ratio));
    }
}

TEST(Experiments, SeedStreamsDiffer) {
    const auto spec = DistributionSpec::exponential(Rational(1));
    const CapacityField a(spec, instance_seed(5, 8, 0));
    const CapacityField b(spec, instance_seed(5, 8, 1));
    int differ = 0;
    for (int i = 0; i < 10000; ++i) {
        const Bond e = Bond::make({i % 100, i / 100}, {i % 100 + 1, i / 100});
        differ += a.capacity(e) != b.capacity(e);
    }
    EXPECT_GT(differ, 0);
    EXPECT_NE(instance_seed(5, 8, 0), disjoint_seed(5, 8, 0));
    EXPECT_NE(instance_seed(5, 1, 0), mu_seed(5, {1, 0}));
}

TEST(Experiments, DisjointClosedForm) {
    RunConfig cfg = constant_square({2});
    cfg.p_open = Rational(1);
    const DisjointRun run = run_disjoint(cfg);
    ASSERT_EQ(run.records.size(), 1u);
    EXPECT_EQ(run.records[0].count, 20);
    EXPECT_EQ(run.records[0].cut_value, 20);
    EXPECT_EQ(run.i_hat, Rational(8));
}

TEST(Experiments, ObserverSeesEveryInstance) {
    RunConfig cfg = constant_square({1, 2});
    cfg.reps = 2;
    int calls = 0;
    cfg.observer = [&](const CapacityField& f, const SiteSet& a, const MaxFlowResult& r) {
        ++calls;
        EXPECT_TRUE(verify_flow(f, r.flow, a).ok);
    };
    (void)run_convergence(cfg);
    EXPECT_EQ(calls, 4);
}

TEST(Experiments, Validation) {
    RunConfig cfg = constant_square({4, 2});
    EXPECT_THROW(run_convergence(cfg), Error);
    cfg = constant_square({});
    EXPECT_THROW(run_convergence(cfg), Error);
    cfg = constant_square({1});
    cfg.epsilon = Rational(1);
    EXPECT_THROW(run_convergence(cfg), Error);
    cfg = constant_square({1});
    cfg.polygon = ConvexPolygon({{Rational(1), Rational(1)}, {Rational(2), Rational(1)}, {Rational(1), Rational(2)}});
    EXPECT_THROW(run_convergence(cfg), Error);
}

TEST(Experiments, Warnings) {
    RunConfig cfg = constant_square({1});
    cfg.spec = DistributionSpec::bernoulli(Rational(1, 2));
    EXPECT_EQ(hypothesis_warnings(cfg, false).size(), 1u);
    cfg.p_open = Rational(1, 2);
    EXPECT_EQ(hypothesis_warnings(cfg, true).size(), 1u);
    cfg.p_open = Rational(3, 4);
    EXPECT_TRUE(hypothesis_warnings(cfg, true).empty());
}

TEST(Experiments, Summary) {
    const ConvergenceRun run = run_convergence(constant_square({1, 2}));
    const auto rows = summarize(run.records, Rational(1, 5));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].mean, 1.5);
    EXPECT_EQ(rows[0].deviation_frequency, 1.0);
    EXPECT_EQ(rows[1].mean, 1.25);
    EXPECT_EQ(rows[1].deviation_frequency, 1.0);  // 1.25 >= 1.2
}
