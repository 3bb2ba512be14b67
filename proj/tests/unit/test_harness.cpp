#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/harness.hpp"
#include "gibbsmimo/temperature.hpp"

namespace gibbsmimo {
namespace {

std::pair<double, double> wilson_reference(double k, double n) {
  const double z = 1.959963984540054;
  const double p = k / n;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {centre - half, centre + half};
}

TEST(Wilson, Examples) {
  EXPECT_EQ(wilson_interval(0, 100).first, 0.0);
  const auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(0.5 - lo, hi - 0.5, 1e-15);
  const auto [lo5, hi5] = wilson_interval(5, 1000);
  EXPECT_LT(lo5, 0.005);
  EXPECT_GT(hi5, 0.005);
  EXPECT_EQ(wilson_interval(7, 7).second, 1.0);
  EXPECT_THROW(wilson_interval(0, 0), InvalidArgument);
  EXPECT_THROW(wilson_interval(3, 2), InvalidArgument);
}

TEST(Wilson, MatchesReferenceFormula) {
  for (std::uint64_t n : {10u, 137u, 10000u}) {
    for (std::uint64_t k = 1; k < n; k += n / 7 + 1) {
      const auto got = wilson_interval(k, n);
      const auto want = wilson_reference(double(k), double(n));
      EXPECT_NEAR(got.first, want.first, 1e-14);
      EXPECT_NEAR(got.second, want.second, 1e-14);
    }
  }
}

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::ber_vs_iterations;
  spec.n = 6;
  spec.snr_db_grid = {4.0, 10.0};
  spec.iterations = 12;
  spec.trials = 300;
  spec.detectors = {DetectorKind::gibbs, DetectorKind::zf, DetectorKind::lmmse, DetectorKind::ml,
                    DetectorKind::sphere};
  spec.alpha_policy = AlphaFixed{1.5};
  spec.master_seed = 77;
  return spec;
}

void expect_same(const std::vector<BerRecord>& a, const std::vector<BerRecord>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].detector, b[i].detector);
    EXPECT_EQ(a[i].snr_db, b[i].snr_db);
    EXPECT_EQ(a[i].iteration, b[i].iteration);
    EXPECT_EQ(a[i].bit_errors, b[i].bit_errors);
    EXPECT_EQ(a[i].bits, b[i].bits);
    EXPECT_EQ(a[i].ber, b[i].ber);
    EXPECT_EQ(a[i].ci_low, b[i].ci_low);
    EXPECT_EQ(a[i].ci_high, b[i].ci_high);
    EXPECT_EQ(a[i].mean_mac, b[i].mean_mac);
  }
}

TEST(RunExperiment, NoiselessZeroForcingIsErrorFree) {
  ExperimentSpec spec;
  spec.n = 8;
  spec.trials = 1;
  spec.detectors = {DetectorKind::zf};
  spec.noiseless = true;
  spec.mode = ExperimentMode::ber_vs_snr;
  const auto records = run_experiment(spec);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].ber, 0.0);
  EXPECT_EQ(records[0].detector, "zf");
  EXPECT_FALSE(records[0].iteration.has_value());
}

TEST(RunExperiment, RecordLayoutAndInvariants) {
  const auto spec = small_spec();
  const auto records = run_experiment(spec);
  // Per SNR point: 12 Gibbs rows then four baselines.
  ASSERT_EQ(records.size(), 2u * (12 + 4));
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t k = 0; k < 12; ++k) {
      const auto& r = records[p * 16 + k];
      EXPECT_EQ(r.detector, "gibbs");
      EXPECT_EQ(r.snr_db, spec.snr_db_grid[p]);
      EXPECT_EQ(r.iteration, k + 1);
    }
    EXPECT_EQ(records[p * 16 + 12].detector, "zf");
    EXPECT_EQ(records[p * 16 + 13].detector, "lmmse");
    EXPECT_EQ(records[p * 16 + 14].detector, "ml");
    EXPECT_EQ(records[p * 16 + 15].detector, "sphere");
  }
  for (const auto& r : records) {
    EXPECT_EQ(r.bits, spec.n * spec.trials);
    EXPECT_EQ(r.ber, double(r.bit_errors) / double(r.bits));
    EXPECT_LE(r.ci_low, r.ber);
    EXPECT_LE(r.ber, r.ci_high);
    EXPECT_GE(r.ci_low, 0.0);
    EXPECT_LE(r.ci_high, 1.0);
  }
  // Sphere and exhaustive search both return the ML vector.
  for (std::size_t p = 0; p < 2; ++p)
    EXPECT_EQ(records[p * 16 + 14].bit_errors, records[p * 16 + 15].bit_errors);
}

TEST(RunExperiment, IndependentOfWorkerCount) {
  const auto spec = small_spec();
  const auto one = run_experiment(spec, {1, {}});
  expect_same(one, run_experiment(spec, {4, {}}));
  expect_same(one, run_experiment(spec, {8, {}}));
  expect_same(one, run_experiment(spec, {1, {}}));
}

TEST(RunExperiment, EveryDetectorSeesTheSameInstance) {
  const auto spec = small_spec();
  std::mutex mu;
  std::map<std::pair<std::size_t, std::uint64_t>, std::set<std::uint64_t>> digests;
  std::map<std::pair<std::size_t, std::uint64_t>, std::set<std::string>> who;
  RunOptions opts;
  opts.workers = 3;
  opts.observer = [&](std::size_t p, std::uint64_t t, std::string_view det, const ProblemInstance& inst) {
    const auto d = instance_digest(inst);
    std::lock_guard lock(mu);
    digests[{p, t}].insert(d);
    who[{p, t}].insert(std::string(det));
  };
  run_experiment(spec, opts);
  ASSERT_EQ(digests.size(), spec.snr_db_grid.size() * spec.trials);
  for (const auto& [key, set] : digests) EXPECT_EQ(set.size(), 1u);
  for (const auto& [key, set] : who) EXPECT_EQ(set.size(), 5u);
}

TEST(RunExperiment, CommonChannelAcrossSnrPoints) {
  const auto spec = small_spec();
  const auto a = trial_instance(spec, 2.0, 5);
  const auto b = trial_instance(spec, 20.0, 5);
  EXPECT_TRUE(a.channel() == b.channel());
  EXPECT_EQ(a.s_true(), b.s_true());
  EXPECT_FALSE(a.channel() == trial_instance(spec, 2.0, 6).channel());
}

TEST(RunExperiment, AlphaPlusInfeasibleNeedsFallback) {
  ExperimentSpec spec;
  spec.n = 10;
  spec.snr_db_grid = {0.0, 10.0};
  spec.trials = 5;
  spec.iterations = 3;
  spec.detectors = {DetectorKind::gibbs};
  spec.alpha_policy = AlphaPlus{};
  EXPECT_THROW(run_experiment(spec), GuardViolation);
  spec.fallback_alpha = 1.1;
  const auto variants_low = resolve_gibbs_variants(spec, 1.0);
  ASSERT_EQ(variants_low.size(), 1u);
  EXPECT_EQ(variants_low[0].alpha, 1.1);
  const auto variants_high = resolve_gibbs_variants(spec, 10.0);
  EXPECT_NEAR(variants_high[0].alpha, *alpha_bounds(10.0, 10).alpha_plus, 1e-15);
  EXPECT_NO_THROW(run_experiment(spec));
}

TEST(RunExperiment, AlphaPolicies) {
  ExperimentSpec spec;
  spec.n = 10;
  spec.alpha_policy = AlphaSigmaRule{};
  EXPECT_DOUBLE_EQ(resolve_gibbs_variants(spec, 10.0)[0].alpha, 0.1);
  spec.alpha_policy = AlphaGrid{{1.0, 2.5}};
  const auto grid = resolve_gibbs_variants(spec, 10.0);
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_NE(grid[0].name, grid[1].name);
  EXPECT_EQ(grid[1].alpha, 2.5);
}

TEST(RunExperiment, ValidatesSpec) {
  ExperimentSpec spec;
  spec.trials = 0;
  EXPECT_THROW(run_experiment(spec), InvalidArgument);
  spec.trials = 1;
  spec.snr_db_grid.clear();
  EXPECT_THROW(run_experiment(spec), InvalidArgument);
  spec.snr_db_grid = {10.0};
  spec.n = 25;
  spec.detectors = {DetectorKind::ml};
  EXPECT_THROW(run_experiment(spec), GuardViolation);
}

TEST(Complexity, GibbsCountIsSnrIndependent) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::complexity_table;
  spec.n = 10;
  spec.iterations = 100;
  spec.trials = 50;
  spec.snr_db_grid = {6.0, 10.0, 14.0};
  spec.detectors = {DetectorKind::gibbs};
  spec.alpha_policy = AlphaFixed{2.0};
  const auto rows = complexity_table(spec);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_EQ(r.mean_mac_per_symbol_vector, 20000.0 + 110.0);
  spec.mode = ExperimentMode::ber_vs_snr;
  EXPECT_THROW(complexity_table(spec), InvalidArgument);
}

TEST(Complexity, SphereCostFallsWithSnr) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::complexity_table;
  spec.n = 10;
  spec.trials = 10000;
  spec.snr_db_grid = {0.0, 4.0, 8.0, 12.0, 16.0, 20.0};
  spec.detectors = {DetectorKind::sphere};
  const auto rows = complexity_table(spec);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_LT(rows[i].mean_mac_per_symbol_vector, rows[i - 1].mean_mac_per_symbol_vector);
}

TEST(Names, Strings) {
  EXPECT_EQ(to_string(DetectorKind::lmmse), "lmmse");
  EXPECT_EQ(to_string(ExperimentMode::ber_vs_iterations), "ber-vs-iter");
  EXPECT_EQ(to_string(ScanOrder::random_permutation), "random-permutation");
  EXPECT_EQ(to_string(InitKind::zero_forcing), "zero-forcing");
}

}  // namespace
}  // namespace gibbsmimo
