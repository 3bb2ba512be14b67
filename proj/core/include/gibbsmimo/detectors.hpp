#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "gibbsmimo/model.hpp"
#include "gibbsmimo/rng.hpp"

namespace gibbsmimo {

// ---------------------------------------------------------------------------
// Gibbs sampler
// ---------------------------------------------------------------------------

enum class ScanOrder {
  random_permutation,       // fresh uniform permutation of 0..n-1 every sweep
  sequential,               // 0, 1, ..., n-1 every sweep
  random_with_replacement,  // n independent uniform indices per sweep
};

struct InitUniformRandom {};
struct InitZeroForcing {};
struct InitGiven {
  SymbolVector s;
};
using GibbsInit = std::variant<InitUniformRandom, InitZeroForcing, InitGiven>;

struct GibbsConfig {
  double alpha = 1.0;           // temperature
  std::size_t iterations = 1;   // full sweeps
  ScanOrder scan_order = ScanOrder::random_permutation;
  GibbsInit init = InitUniformRandom{};
  RngSeed seed{};
  // Keep the best-so-far vector after every sweep in
  // DetectionResult::decision_trajectory.
  bool record_decisions = false;

  // Throws InvalidArgument unless alpha > 0 (finite) and iterations >= 1.
  void validate() const;
};

struct DetectionResult {
  SymbolVector s_hat;                 // lowest-cost vector visited so far
  double best_cost = 0.0;             // == cost(instance, s_hat)
  std::vector<double> cost_trajectory;  // best cost after each sweep
  std::vector<SymbolVector> decision_trajectory;  // only with record_decisions
  std::uint64_t mac_count = 0;        // sampler MACs: 2 n per symbol evaluation
  std::uint64_t init_mac_count = 0;   // initial residual (and ZF init if used)
  std::size_t iterations_run = 0;
};

// Conditional probability that entry j takes +1 given all other entries of
// `current`, at temperature alpha:
//   p(+1) = 1 / (1 + exp((c(+1) - c(-1)) / (2 alpha^2)))
// where c(w) is the cost with entry j set to w. `residual` must equal
// y - sqrt(snr/n) H current.
double gibbs_conditional(const ProblemInstance& instance, const SymbolVector& current,
                         std::size_t j, double alpha, const Eigen::VectorXd& residual);

struct ResidualUpdate {
  Eigen::VectorXd residual;
  double squared_norm = 0.0;
  std::uint64_t macs = 0;
};

// d' = d - sqrt(snr/n) H[:, j] delta_s with delta_s in {-2, 0, +2}. A nonzero
// update costs 2n MACs (column product plus the new squared norm); a zero
// update costs none.
ResidualUpdate update_residual(const Eigen::VectorXd& residual, const ProblemInstance& instance,
                               std::size_t j, int delta_s);

// Single-site Gibbs chain at fixed temperature over {-1,+1}^n. Keeps the
// residual y - sqrt(snr/n) H s up to date incrementally; each symbol
// evaluation costs 2n MACs.
class GibbsChain {
 public:
  GibbsChain(const ProblemInstance& instance, double alpha, ScanOrder order, SymbolVector start,
             RngSeed seed);

  // One full sweep: n single-site updates in the configured order. `on_move`
  // is called after every accepted flip.
  template <typename OnMove>
  void sweep(OnMove&& on_move);
  void sweep() {
    sweep([](const GibbsChain&) {});
  }

  const SymbolVector& state() const { return state_; }
  const Eigen::VectorXd& residual() const { return residual_; }
  // Incrementally maintained ||residual||^2.
  double current_cost() const { return cost_; }
  std::uint64_t mac_count() const { return macs_; }
  const ProblemInstance& instance() const { return *instance_; }

 private:
  bool update_site(std::size_t j);
  void prepare_order();

  const ProblemInstance* instance_;
  double inv_two_alpha_sq_;
  ScanOrder scan_order_;
  RandomStream rng_;
  SymbolVector state_;
  Eigen::VectorXd residual_;
  Eigen::VectorXd candidate_;
  double cost_ = 0.0;
  std::uint64_t macs_ = 0;
  std::vector<std::size_t> order_;
};

template <typename OnMove>
void GibbsChain::sweep(OnMove&& on_move) {
  prepare_order();
  for (std::size_t j : order_) {
    if (update_site(j)) on_move(*this);
  }
}

DetectionResult gibbs_detect(const ProblemInstance& instance, const GibbsConfig& config);

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

// sign(H^-1 y). Throws SingularChannel if H is numerically singular.
SymbolVector zf_detect(const ProblemInstance& instance);

// sign((c H^T H + I)^-1 sqrt(c) H^T y), c = snr / n. This is the linear MMSE
// estimate for y = sqrt(c) H s + v with E[s s^T] = I and E[v v^T] = I.
SymbolVector lmmse_detect(const ProblemInstance& instance);

inline constexpr std::size_t kMaxExhaustiveDimension = 24;

// Global minimiser of cost over {-1,+1}^n by Gray-code enumeration; exact ties
// go to the lexicographically smallest vector. Throws GuardViolation for
// n > kMaxExhaustiveDimension.
SymbolVector ml_exhaustive(const ProblemInstance& instance);

// Nominal MAC counts used by complexity reporting.
std::uint64_t zf_mac_count(std::size_t n);
std::uint64_t lmmse_mac_count(std::size_t n);
std::uint64_t ml_exhaustive_mac_count(std::size_t n);

// ---------------------------------------------------------------------------
// Sphere decoder
// ---------------------------------------------------------------------------

// Squared radius = cost(s_true), i.e. ||noise||^2.
struct RadiusTransmittedResidual {};
// Squared radius = cost of a previously found Gibbs solution.
struct RadiusGibbsSolution {
  SymbolVector s;
};
// Explicit squared radius.
struct RadiusValue {
  double squared_radius = 0.0;
};
using RadiusInit = std::variant<RadiusTransmittedResidual, RadiusGibbsSolution, RadiusValue>;

struct SphereResult {
  SymbolVector s_hat;
  double best_cost = 0.0;
  double initial_squared_radius = 0.0;
  std::uint64_t node_visits = 0;
  std::uint64_t mac_count = 0;
};

// Depth-first Schnorr-Euchner search on the QR-triangularised system. The
// radius shrinks to every leaf found, so the result is the ML minimiser
// whenever the initial sphere contains a lattice point. Throws EmptySphere when
// an explicit RadiusValue encloses no point.
SphereResult sphere_detect(const ProblemInstance& instance, const RadiusInit& radius_init);

// Radius choice for large systems: the smaller of the transmitted residual and
// the cost of `gibbs_solution`.
RadiusInit radius_trick(const ProblemInstance& instance, const SymbolVector& gibbs_solution);

}  // namespace gibbsmimo
