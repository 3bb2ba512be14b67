#include "gibbsmimo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>

#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"
#include "gibbsmimo/temperature.hpp"

namespace gibbsmimo {

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // two-sided 95%

bool contains(const std::vector<DetectorKind>& v, DetectorKind k) {
  return std::find(v.begin(), v.end(), k) != v.end();
}

std::vector<DetectorKind> baselines_of(const ExperimentSpec& spec) {
  std::vector<DetectorKind> out;
  for (auto d : spec.detectors)
    if (d != DetectorKind::gibbs && !contains(out, d)) out.push_back(d);
  return out;
}

// Per-SNR-point integer tallies. Integer sums make the worker merge exact
// and order independent.
struct PointTally {
  std::vector<std::vector<std::uint64_t>> gibbs_errors;  // [variant][iteration slot]
  std::vector<std::uint64_t> gibbs_mac;                  // sampler MACs
  std::vector<std::uint64_t> gibbs_init_mac;
  std::vector<std::uint64_t> baseline_errors;
  std::vector<std::uint64_t> baseline_mac;

  PointTally(std::size_t variants, std::size_t slots, std::size_t baselines)
      : gibbs_errors(variants, std::vector<std::uint64_t>(slots, 0)),
        gibbs_mac(variants, 0),
        gibbs_init_mac(variants, 0),
        baseline_errors(baselines, 0),
        baseline_mac(baselines, 0) {}

  void merge(const PointTally& o) {
    for (std::size_t v = 0; v < gibbs_errors.size(); ++v) {
      for (std::size_t s = 0; s < gibbs_errors[v].size(); ++s) gibbs_errors[v][s] += o.gibbs_errors[v][s];
      gibbs_mac[v] += o.gibbs_mac[v];
      gibbs_init_mac[v] += o.gibbs_init_mac[v];
    }
    for (std::size_t b = 0; b < baseline_errors.size(); ++b) {
      baseline_errors[b] += o.baseline_errors[b];
      baseline_mac[b] += o.baseline_mac[b];
    }
  }
};

BerRecord make_record(std::string detector, double snr_db, std::optional<std::size_t> iteration,
                      std::uint64_t errors, std::uint64_t bits, double mean_mac) {
  BerRecord r;
  r.detector = std::move(detector);
  r.snr_db = snr_db;
  r.iteration = iteration;
  r.bit_errors = errors;
  r.bits = bits;
  r.ber = static_cast<double>(errors) / static_cast<double>(bits);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(errors, bits);
  r.mean_mac = mean_mac;
  return r;
}

}  // namespace

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::gibbs: return "gibbs";
    case DetectorKind::zf: return "zf";
    case DetectorKind::lmmse: return "lmmse";
    case DetectorKind::ml: return "ml";
    case DetectorKind::sphere: return "sphere";
  }
  return "unknown";
}

std::string_view to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::ber_vs_iterations: return "ber-vs-iter";
    case ExperimentMode::ber_vs_snr: return "ber-vs-snr";
    case ExperimentMode::complexity_table: return "complexity";
  }
  return "unknown";
}

std::string_view to_string(ScanOrder order) {
  switch (order) {
    case ScanOrder::random_permutation: return "random-permutation";
    case ScanOrder::sequential: return "sequential";
    case ScanOrder::random_with_replacement: return "random-with-replacement";
  }
  return "unknown";
}

std::string_view to_string(InitKind init) {
  switch (init) {
    case InitKind::uniform_random: return "uniform-random";
    case InitKind::zero_forcing: return "zero-forcing";
  }
  return "unknown";
}

void ExperimentSpec::validate() const {
  if (n == 0) throw InvalidArgument("experiment: n must be >= 1");
  if (snr_db_grid.empty()) throw InvalidArgument("experiment: SNR grid is empty");
  for (double s : snr_db_grid)
    if (!std::isfinite(s)) throw InvalidArgument("experiment: non-finite SNR in grid");
  if (trials == 0) throw InvalidArgument("experiment: trials must be >= 1");
  if (iterations == 0) throw InvalidArgument("experiment: iterations must be >= 1");
  if (detectors.empty()) throw InvalidArgument("experiment: no detectors selected");
  if (zeta && !(*zeta > 0.0)) throw InvalidArgument("experiment: zeta must be > 0");
  if (const auto* fixed = std::get_if<AlphaFixed>(&alpha_policy); fixed && !(fixed->alpha > 0.0))
    throw InvalidArgument("experiment: fixed alpha must be > 0");
  if (const auto* grid = std::get_if<AlphaGrid>(&alpha_policy)) {
    if (grid->alphas.empty()) throw InvalidArgument("experiment: alpha grid is empty");
    for (double a : grid->alphas)
      if (!(a > 0.0)) throw InvalidArgument("experiment: alpha grid values must be > 0");
  }
  if (fallback_alpha && !(*fallback_alpha > 0.0))
    throw InvalidArgument("experiment: fallback alpha must be > 0");
  if (contains(detectors, DetectorKind::ml) && n > kMaxExhaustiveDimension)
    throw GuardViolation("experiment: ml detector needs n <= " +
                         std::to_string(kMaxExhaustiveDimension));
  if (std::holds_alternative<AlphaPlus>(alpha_policy) && contains(detectors, DetectorKind::gibbs) &&
      n < 2)
    throw InvalidArgument("experiment: alpha-plus policy needs n >= 2");
}

std::vector<GibbsVariant> resolve_gibbs_variants(const ExperimentSpec& spec, double snr_linear) {
  std::vector<GibbsVariant> out;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, AlphaFixed>) {
          out.push_back({"gibbs", p.alpha});
        } else if constexpr (std::is_same_v<P, AlphaSigmaRule>) {
          out.push_back({"gibbs", 1.0 / snr_linear});
        } else if constexpr (std::is_same_v<P, AlphaPlus>) {
          const double zeta = spec.zeta.value_or(default_zeta(static_cast<double>(spec.n)));
          const auto sol = alpha_bounds(snr_linear, spec.n, zeta);
          if (sol.feasible) {
            out.push_back({"gibbs", *sol.alpha_plus});
          } else if (spec.fallback_alpha) {
            out.push_back({"gibbs", *spec.fallback_alpha});
          } else {
            throw GuardViolation("alpha-plus policy at snr = " + shortest_repr(snr_linear) + ": " +
                                 sol.diagnostic + " (set a fallback alpha to proceed)");
          }
        } else {
          for (double a : p.alphas) out.push_back({"gibbs(alpha=" + shortest_repr(a) + ")", a});
        }
      },
      spec.alpha_policy);
  return out;
}

ProblemInstance trial_instance(const ExperimentSpec& spec, double snr_linear, std::uint64_t trial) {
  const RngSeed seed{spec.master_seed, trial};
  if (!spec.noiseless) return generate_instance(spec.n, snr_linear, spec.symbol_policy, seed);
  auto traced = generate_traced_instance(spec.n, snr_linear, spec.symbol_policy, seed);
  const ProblemInstance& g = traced.instance;
  Eigen::VectorXd y = g.scale() * (g.channel() * g.s_true().to_eigen());
  return ProblemInstance(g.snr(), g.channel(), std::move(y), g.s_true());
}

std::vector<BerRecord> run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  const bool with_gibbs = contains(spec.detectors, DetectorKind::gibbs);
  const auto baselines = baselines_of(spec);
  const std::size_t points = spec.snr_db_grid.size();
  const bool per_iteration = spec.mode == ExperimentMode::ber_vs_iterations;
  const std::size_t slots = per_iteration ? spec.iterations : 1;

  std::vector<double> snr_linear(points);
  std::vector<std::vector<GibbsVariant>> variants(points);
  for (std::size_t p = 0; p < points; ++p) {
    snr_linear[p] = snr_db_to_linear(spec.snr_db_grid[p]);
    if (with_gibbs) variants[p] = resolve_gibbs_variants(spec, snr_linear[p]);
  }
  const std::size_t variant_count = with_gibbs ? variants[0].size() : 0;

  auto fresh_tallies = [&] {
    return std::vector<PointTally>(points, PointTally(variant_count, slots, baselines.size()));
  };

  const std::uint64_t trials = spec.trials;
  const std::uint64_t units = static_cast<std::uint64_t>(points) * trials;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::uint64_t>(options.workers, units));

  std::atomic<std::uint64_t> next_unit{0};
  std::vector<std::vector<PointTally>> per_worker(workers, fresh_tallies());
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](std::size_t w) {
    try {
      auto& tallies = per_worker[w];
      for (std::uint64_t u = next_unit.fetch_add(1); u < units; u = next_unit.fetch_add(1)) {
        const std::size_t p = static_cast<std::size_t>(u / trials);
        const std::uint64_t t = u % trials;
        const ProblemInstance inst = trial_instance(spec, snr_linear[p], t);
        const RngSeed trial_seed{spec.master_seed, t};
        PointTally& tally = tallies[p];

        std::optional<SymbolVector> first_gibbs;
        for (std::size_t v = 0; v < variant_count; ++v) {
          if (options.observer) options.observer(p, t, variants[p][v].name, inst);
          GibbsConfig cfg;
          cfg.alpha = variants[p][v].alpha;
          cfg.iterations = spec.iterations;
          cfg.scan_order = spec.scan_order;
          if (spec.init == InitKind::zero_forcing) cfg.init = InitZeroForcing{};
          cfg.seed = derive_seed(trial_seed, "gibbs");
          cfg.record_decisions = per_iteration;
          const DetectionResult res = gibbs_detect(inst, cfg);
          if (per_iteration) {
            for (std::size_t k = 0; k < slots; ++k)
              tally.gibbs_errors[v][k] += hamming_distance(res.decision_trajectory[k], inst.s_true());
          } else {
            tally.gibbs_errors[v][0] += hamming_distance(res.s_hat, inst.s_true());
          }
          tally.gibbs_mac[v] += res.mac_count;
          tally.gibbs_init_mac[v] += res.init_mac_count;
          if (!first_gibbs) first_gibbs = res.s_hat;
        }

        for (std::size_t b = 0; b < baselines.size(); ++b) {
          const DetectorKind kind = baselines[b];
          if (options.observer) options.observer(p, t, to_string(kind), inst);
          SymbolVector s_hat;
          std::uint64_t mac = 0;
          switch (kind) {
            case DetectorKind::zf:
              s_hat = zf_detect(inst);
              mac = zf_mac_count(spec.n);
              break;
            case DetectorKind::lmmse:
              s_hat = lmmse_detect(inst);
              mac = lmmse_mac_count(spec.n);
              break;
            case DetectorKind::ml:
              s_hat = ml_exhaustive(inst);
              mac = ml_exhaustive_mac_count(spec.n);
              break;
            case DetectorKind::sphere: {
              const RadiusInit radius = first_gibbs ? radius_trick(inst, *first_gibbs)
                                                    : RadiusInit{RadiusTransmittedResidual{}};
              const SphereResult sr = sphere_detect(inst, radius);
              s_hat = sr.s_hat;
              mac = sr.mac_count;
              break;
            }
            case DetectorKind::gibbs:
              break;
          }
          tally.baseline_errors[b] += hamming_distance(s_hat, inst.s_true());
          tally.baseline_mac[b] += mac;
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
      next_unit.store(units);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  auto total = fresh_tallies();
  for (const auto& wt : per_worker)
    for (std::size_t p = 0; p < points; ++p) total[p].merge(wt[p]);

  const std::uint64_t bits = static_cast<std::uint64_t>(spec.n) * trials;
  const double td = static_cast<double>(trials);
  std::vector<BerRecord> records;
  for (std::size_t p = 0; p < points; ++p) {
    const PointTally& tally = total[p];
    const double snr_db = spec.snr_db_grid[p];
    for (std::size_t v = 0; v < variant_count; ++v) {
      const double init_mac = static_cast<double>(tally.gibbs_init_mac[v]) / td;
      const double sampler_mac = static_cast<double>(tally.gibbs_mac[v]) / td;
      for (std::size_t k = 0; k < slots; ++k) {
        const std::size_t iteration = per_iteration ? k + 1 : spec.iterations;
        const double mac = init_mac + sampler_mac * static_cast<double>(iteration) /
                                          static_cast<double>(spec.iterations);
        records.push_back(make_record(variants[p][v].name, snr_db, iteration,
                                      tally.gibbs_errors[v][k], bits, mac));
      }
    }
    for (std::size_t b = 0; b < baselines.size(); ++b) {
      records.push_back(make_record(std::string(to_string(baselines[b])), snr_db, std::nullopt,
                                    tally.baseline_errors[b], bits,
                                    static_cast<double>(tally.baseline_mac[b]) / td));
    }
  }
  return records;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t total) {
  if (total == 0) throw InvalidArgument("wilson_interval: total must be >= 1");
  if (errors > total) throw InvalidArgument("wilson_interval: errors > total");
  const double nd = static_cast<double>(total);
  const double p = static_cast<double>(errors) / nd;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  double high = errors == total ? 1.0 : std::min(1.0, center + half);
  low = std::min(low, p);
  high = std::max(high, p);
  return {low, high};
}

std::vector<ComplexityRow> complexity_table(const ExperimentSpec& spec, const RunOptions& options) {
  if (spec.mode != ExperimentMode::complexity_table)
    throw InvalidArgument("complexity_table: spec.mode must be complexity_table");
  std::vector<ComplexityRow> rows;
  for (const auto& r : run_experiment(spec, options))
    rows.push_back({r.detector, r.snr_db, r.mean_mac});
  return rows;
}

std::uint64_t instance_digest(const ProblemInstance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ull;
    }
  };
  mix(instance.channel().data(), sizeof(double) * static_cast<std::size_t>(instance.channel().size()));
  mix(instance.received().data(), sizeof(double) * static_cast<std::size_t>(instance.received().size()));
  const auto s = instance.s_true().entries();
  mix(s.data(), s.size());
  const double snr = instance.snr();
  mix(&snr, sizeof snr);
  return h;
}

}  // namespace gibbsmimo
