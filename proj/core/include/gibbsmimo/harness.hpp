#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gibbsmimo/detectors.hpp"
#include "gibbsmimo/model.hpp"

namespace gibbsmimo {

enum class ExperimentMode { ber_vs_iterations, ber_vs_snr, complexity_table };
enum class DetectorKind { gibbs, zf, lmmse, ml, sphere };
enum class InitKind { uniform_random, zero_forcing };

struct AlphaFixed {
  double alpha = 1.0;
};
// Largest admissible temperature for each SNR point.
struct AlphaPlus {};
// alpha = 1 / snr (linear).
struct AlphaSigmaRule {};
struct AlphaGrid {
  std::vector<double> alphas;
};
using AlphaPolicy = std::variant<AlphaFixed, AlphaPlus, AlphaSigmaRule, AlphaGrid>;

struct ExperimentSpec {
  ExperimentMode mode = ExperimentMode::ber_vs_iterations;
  std::size_t n = 10;
  std::vector<double> snr_db_grid{10.0};
  std::size_t iterations = 100;
  std::size_t trials = 10000;
  std::vector<DetectorKind> detectors{DetectorKind::gibbs, DetectorKind::zf, DetectorKind::lmmse};
  AlphaPolicy alpha_policy = AlphaPlus{};
  std::optional<double> zeta;  // empty: 1 / ln n
  ScanOrder scan_order = ScanOrder::random_permutation;
  InitKind init = InitKind::uniform_random;
  std::uint64_t master_seed = 0;
  // Used for SNR points where alpha_plus does not exist; without it such
  // points are an error.
  std::optional<double> fallback_alpha;
  SymbolPolicy symbol_policy = SymbolPolicy::uniform_random;
  // Drop the noise term (y = sqrt(snr/n) H s). Testing aid.
  bool noiseless = false;

  // Throws InvalidArgument / GuardViolation on inconsistent settings.
  void validate() const;
};

struct BerRecord {
  std::string detector;
  double snr_db = 0.0;
  std::optional<std::size_t> iteration;  // empty for non-iterative detectors
  double ber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double mean_mac = 0.0;
};

// Called for every (trial, detector) pair with the instance the detector saw.
// Invoked from worker threads; the callee synchronises.
using InstanceObserver = std::function<void(std::size_t snr_index, std::uint64_t trial,
                                            std::string_view detector,
                                            const ProblemInstance& instance)>;

struct RunOptions {
  std::size_t workers = 1;
  InstanceObserver observer;
};

// One Gibbs configuration resolved for an SNR point.
struct GibbsVariant {
  std::string name;
  double alpha = 1.0;
};
std::vector<GibbsVariant> resolve_gibbs_variants(const ExperimentSpec& spec, double snr_linear);

// The instance for (snr point, trial). Stream (master_seed, trial), so every
// SNR point reuses the same H, noise and symbols per trial.
ProblemInstance trial_instance(const ExperimentSpec& spec, double snr_linear, std::uint64_t trial);

// Records are ordered by SNR point, then detector (Gibbs variants first, in
// policy order, then baselines in spec order), then iteration. The output is
// a pure function of `spec`; `options.workers` does not affect it.
std::vector<BerRecord> run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total);

struct ComplexityRow {
  std::string detector;
  double snr_db = 0.0;
  double mean_mac_per_symbol_vector = 0.0;
};
// Requires spec.mode == complexity_table.
std::vector<ComplexityRow> complexity_table(const ExperimentSpec& spec,
                                            const RunOptions& options = {});

std::string_view to_string(DetectorKind kind);
std::string_view to_string(ExperimentMode mode);
std::string_view to_string(ScanOrder order);
std::string_view to_string(InitKind init);

// FNV-1a over H, y and s_true.
std::uint64_t instance_digest(const ProblemInstance& instance);

}  // namespace gibbsmimo
