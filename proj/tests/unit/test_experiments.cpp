#include "latsurj/experiments.hpp"
#include "latsurj/modp_linalg.hpp"
#include "latsurj/serialization.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace latsurj;

namespace {

ExperimentConfig small(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n = 8;
  cfg.trials = 60;
  cfg.master_seed = 3;
  cfg.threads = 1;
  return cfg;
}

const Outcome& outcome(const ExperimentReport& r, const std::string& label) {
  for (const auto& o : r.outcomes)
    if (o.label == label) return o;
  throw std::runtime_error("missing outcome " + label);
}

}  // namespace

TEST(Experiments, WilsonInterval) {
  // 0 of 10 at 95%: upper end z^2 / (n + z^2)
  const double z = 1.959963984540054;
  auto [lo, hi] = wilson_interval(0, 10, 0.95);
  EXPECT_NEAR(lo, 0.0, 1e-12);
  EXPECT_NEAR(hi, z * z / (10 + z * z), 1e-9);
  std::tie(lo, hi) = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(lo + hi, 1.0, 1e-12);
  const double half = z * std::sqrt(0.25 / 100 + z * z / 40000) / (1 + z * z / 100);
  EXPECT_NEAR(hi - lo, 2 * half, 1e-9);
  std::tie(lo, hi) = wilson_interval(7, 7, 0.99);
  EXPECT_NEAR(hi, 1.0, 1e-12);
  EXPECT_LT(lo, 1.0);
}

TEST(Experiments, KindNames) {
  EXPECT_EQ(parse_experiment_kind("corank"), ExperimentKind::corank_dist);
  EXPECT_EQ(parse_experiment_kind("trivial"), ExperimentKind::trivial_cokernel);
  EXPECT_EQ(parse_experiment_kind("square"), ExperimentKind::square_never);
  EXPECT_EQ(parse_experiment_kind("symmetric"), ExperimentKind::symmetric);
  EXPECT_THROW(parse_experiment_kind("nope"), std::invalid_argument);
  for (auto k : {ExperimentKind::corank_dist, ExperimentKind::trivial_cokernel, ExperimentKind::square_never,
                 ExperimentKind::singularity, ExperimentKind::exposure, ExperimentKind::symmetric})
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
}

TEST(Experiments, Validation) {
  auto cfg = small(ExperimentKind::corank_dist);
  cfg.p = 4;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = small(ExperimentKind::corank_dist);
  cfg.u = 2;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = small(ExperimentKind::trivial_cokernel);
  cfg.dist = "0:1/2";
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = small(ExperimentKind::trivial_cokernel);
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = small(ExperimentKind::trivial_cokernel);
  cfg.primes = {2, 9};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

TEST(Experiments, ResolvedExtraColumns) {
  auto cfg = small(ExperimentKind::symmetric);
  cfg.n = 40;
  EXPECT_EQ(resolved_u(cfg), 13u);  // ceil(sqrt(40 ln 40))
  cfg.B = 2;
  EXPECT_EQ(resolved_u(cfg), static_cast<std::size_t>(std::ceil(2 * std::sqrt(40 * std::log(40.0)))));
  EXPECT_EQ(resolved_u(small(ExperimentKind::trivial_cokernel)), 2u);
  EXPECT_EQ(resolved_u(small(ExperimentKind::square_never)), 0u);
}

TEST(Experiments, TrialMatricesAreRecoverable) {
  auto cfg = small(ExperimentKind::corank_dist);
  cfg.trials = 30;
  const auto report = run_experiment(cfg);
  std::uint64_t corank0 = 0;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    const auto m = sample_matrix(trial_spec(cfg, i));
    EXPECT_EQ(trial_spec(cfg, i).seed, trial_seed(cfg, i));
    corank0 += corank_mod_p(reduce_mod(m, Integer(2))) == 0;
  }
  EXPECT_EQ(outcome(report, "corank=0").count, corank0);
}

TEST(Experiments, CorankFrequenciesPartitionTrials) {
  auto cfg = small(ExperimentKind::corank_dist);
  cfg.n = 12;
  cfg.trials = 500;
  const auto r = run_experiment(cfg);
  std::uint64_t total = 0;
  for (const auto& o : r.outcomes) total += o.count;
  EXPECT_EQ(total, cfg.trials);
  EXPECT_TRUE(outcome(r, "corank=0").prediction.has_value());
}

TEST(Experiments, PointMassIsAlwaysSingular) {
  auto cfg = small(ExperimentKind::singularity);
  cfg.dist = "1:1";
  cfg.singular_mode = SingularityMode::integer;
  const auto r = run_experiment(cfg);
  EXPECT_EQ(outcome(r, "singular").freq, 1.0);
  EXPECT_FALSE(r.passed);
}

TEST(Experiments, SingularityReferenceCurves) {
  auto cfg = small(ExperimentKind::singularity);
  cfg.n = 30;
  cfg.c_grid = {0.5, 1.0};
  cfg.max_count = 60;
  const auto r = run_experiment(cfg);
  ASSERT_EQ(r.outcomes.size(), 3u);
  EXPECT_NEAR(*r.outcomes[1].prediction, std::exp(-0.5 * 0.5 * 30), 1e-12);
  EXPECT_EQ(r.outcomes[0].check, CheckKind::count_at_most);
  EXPECT_TRUE(r.passed);
}

TEST(Experiments, LargeUMakesCokernelTrivial) {
  auto cfg = small(ExperimentKind::trivial_cokernel);
  cfg.n = 10;
  cfg.u = 20;
  cfg.trials = 100;
  const auto r = run_experiment(cfg);
  EXPECT_GE(outcome(r, "cokernel_trivial").freq, 0.99);
  EXPECT_TRUE(r.passed);
}

TEST(Experiments, PrimeRestrictedOutcome) {
  auto cfg = small(ExperimentKind::trivial_cokernel);
  cfg.n = 12;
  cfg.u = 1;
  cfg.primes = {2};
  cfg.trials = 200;
  const auto r = run_experiment(cfg);
  const auto& o = outcome(r, "p_parts_trivial{2}");
  EXPECT_NEAR(*o.prediction, 0.577576190173205, 1e-12);
  EXPECT_GE(o.count, outcome(r, "cokernel_trivial").count);
}

TEST(Experiments, ExposureRows) {
  auto cfg = small(ExperimentKind::exposure);
  cfg.n = 15;
  cfg.trials = 12;
  cfg.B = 2;
  const auto r = run_experiment(cfg);
  ASSERT_EQ(r.runs.size(), 12u);
  for (const auto& row : r.runs) {
    EXPECT_TRUE(row.monotone);
    EXPECT_EQ(row.primes.size(), row.initial_coranks.size());
    EXPECT_TRUE(!row.achieved || row.certified);
  }
  EXPECT_EQ(outcome(r, "monotone_trajectories").freq, 1.0);
}

TEST(Experiments, SymmetricModel) {
  auto cfg = small(ExperimentKind::symmetric);
  cfg.n = 12;
  cfg.trials = 80;
  const auto r = run_experiment(cfg);
  EXPECT_EQ(outcome(r, "symmetric_block").freq, 1.0);
  EXPECT_LE(outcome(r, "cokernel_trivial_u0_control").freq, outcome(r, "cokernel_trivial").freq);
}

TEST(Experiments, ReportsIgnoreThreadCount) {
  for (auto kind : {ExperimentKind::corank_dist, ExperimentKind::trivial_cokernel, ExperimentKind::exposure,
                    ExperimentKind::symmetric}) {
    auto a = small(kind);
    a.trials = 40;
    auto b = a;
    b.threads = 4;
    const auto ja = to_json(run_experiment(a), false).dump();
    const auto jb = to_json(run_experiment(b), false).dump();
    EXPECT_EQ(ja, jb) << to_string(kind);
  }
}
