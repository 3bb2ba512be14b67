#include "gibbsmimo/detectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "gibbsmimo/errors.hpp"

namespace gibbsmimo {

namespace {

// 1 / (1 + exp(x)) without overflow warnings for large |x|.
double logistic_of_negative(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void check_index(const ProblemInstance& instance, std::size_t j, const char* where) {
  if (j >= instance.n())
    throw InvalidArgument(std::string(where) + ": index " + std::to_string(j) +
                          " out of range for n = " + std::to_string(instance.n()));
}

}  // namespace

void GibbsConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("GibbsConfig: alpha must be positive and finite");
  if (iterations == 0) throw InvalidArgument("GibbsConfig: iterations must be >= 1");
  if (const auto* given = std::get_if<InitGiven>(&init); given && given->s.size() == 0)
    throw InvalidArgument("GibbsConfig: given initial vector is empty");
}

double gibbs_conditional(const ProblemInstance& instance, const SymbolVector& current,
                         std::size_t j, double alpha, const Eigen::VectorXd& residual) {
  check_index(instance, j, "gibbs_conditional");
  if (current.size() != instance.n() || static_cast<std::size_t>(residual.size()) != instance.n())
    throw DimensionMismatch("gibbs_conditional: dimension mismatch");
  if (!residual.allFinite()) throw InvalidArgument("gibbs_conditional: non-finite residual");
  if (!(alpha > 0.0)) throw InvalidArgument("gibbs_conditional: alpha must be positive");

  const double c_current = residual.squaredNorm();
  const auto col = instance.channel().col(static_cast<Eigen::Index>(j));
  // Flipping entry j changes s_j by -2 s_j.
  const double step = 2.0 * instance.scale() * current[j];
  const double c_flip = (residual + step * col).squaredNorm();
  const double c_plus = current[j] > 0 ? c_current : c_flip;
  const double c_minus = current[j] > 0 ? c_flip : c_current;
  return logistic_of_negative((c_plus - c_minus) / (2.0 * alpha * alpha));
}

ResidualUpdate update_residual(const Eigen::VectorXd& residual, const ProblemInstance& instance,
                               std::size_t j, int delta_s) {
  check_index(instance, j, "update_residual");
  if (static_cast<std::size_t>(residual.size()) != instance.n())
    throw DimensionMismatch("update_residual: residual length mismatch");
  if (delta_s != -2 && delta_s != 0 && delta_s != 2)
    throw InvalidArgument("update_residual: delta_s must be -2, 0 or +2");

  ResidualUpdate out{residual, 0.0, 0};
  if (delta_s == 0) {
    out.squared_norm = residual.squaredNorm();
    return out;
  }
  const double step = instance.scale() * delta_s;
  const auto col = instance.channel().col(static_cast<Eigen::Index>(j));
  double norm = 0.0;
  for (Eigen::Index i = 0; i < out.residual.size(); ++i) {
    out.residual[i] -= step * col[i];
    norm += out.residual[i] * out.residual[i];
  }
  out.squared_norm = norm;
  out.macs = 2 * instance.n();
  return out;
}

GibbsChain::GibbsChain(const ProblemInstance& instance, double alpha, ScanOrder order,
                       SymbolVector start, RngSeed seed)
    : instance_(&instance),
      inv_two_alpha_sq_(1.0 / (2.0 * alpha * alpha)),
      scan_order_(order),
      rng_(seed),
      state_(std::move(start)),
      residual_(gibbsmimo::residual(instance, state_)),
      candidate_(residual_.size()),
      cost_(residual_.squaredNorm()),
      order_(instance.n()) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("GibbsChain: alpha must be positive and finite");
  std::iota(order_.begin(), order_.end(), std::size_t{0});
}

void GibbsChain::prepare_order() {
  const std::size_t n = order_.size();
  switch (scan_order_) {
    case ScanOrder::sequential:
      std::iota(order_.begin(), order_.end(), std::size_t{0});
      break;
    case ScanOrder::random_permutation:
      for (std::size_t i = n; i > 1; --i) std::swap(order_[i - 1], order_[rng_.uniform_index(i)]);
      break;
    case ScanOrder::random_with_replacement:
      for (auto& j : order_) j = rng_.uniform_index(n);
      break;
  }
}

bool GibbsChain::update_site(std::size_t j) {
  // Cost of the alternative symbol: 2n MACs for the column update and the
  // squared norm.
  const auto dim = residual_.size();
  const double step = 2.0 * instance_->scale() * state_[j];
  const double* col = instance_->channel().col(static_cast<Eigen::Index>(j)).data();
  double c_flip = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    candidate_[i] = residual_[i] + step * col[i];
    c_flip += candidate_[i] * candidate_[i];
  }
  macs_ += 2 * static_cast<std::uint64_t>(dim);

  const double p_flip = logistic_of_negative((c_flip - cost_) * inv_two_alpha_sq_);
  if (rng_.uniform() >= p_flip) return false;
  state_.flip(j);
  residual_.swap(candidate_);
  cost_ = c_flip;
  return true;
}

DetectionResult gibbs_detect(const ProblemInstance& instance, const GibbsConfig& config) {
  config.validate();
  const std::size_t n = instance.n();
  RandomStream init_rng(derive_seed(config.seed, "init"));

  DetectionResult result;
  SymbolVector start;
  if (std::holds_alternative<InitUniformRandom>(config.init)) {
    start = SymbolVector(n);
    for (std::size_t j = 0; j < n; ++j) start.set(j, init_rng.coin() ? 1 : -1);
  } else if (std::holds_alternative<InitZeroForcing>(config.init)) {
    start = zf_detect(instance);
    result.init_mac_count += zf_mac_count(n);
  } else {
    start = std::get<InitGiven>(config.init).s;
    if (start.size() != n) throw DimensionMismatch("gibbs_detect: initial vector length mismatch");
  }

  GibbsChain chain(instance, config.alpha, config.scan_order, start, config.seed);
  result.init_mac_count += n * n + n;
  result.s_hat = chain.state();
  result.best_cost = chain.current_cost();
  double best_tracked = result.best_cost;
  result.cost_trajectory.reserve(config.iterations);
  if (config.record_decisions) result.decision_trajectory.reserve(config.iterations);

  auto track_best = [&](const GibbsChain& c) {
    if (c.current_cost() >= best_tracked) return;
    best_tracked = c.current_cost();
    // The reported best cost is a from-scratch value so that it equals
    // cost(instance, s_hat) exactly.
    const double exact = cost(instance, c.state());
    if (exact < result.best_cost) {
      result.best_cost = exact;
      result.s_hat = c.state();
    }
  };

  for (std::size_t k = 0; k < config.iterations; ++k) {
    chain.sweep(track_best);
    result.cost_trajectory.push_back(result.best_cost);
    if (config.record_decisions) result.decision_trajectory.push_back(result.s_hat);
  }
  result.mac_count = chain.mac_count();
  result.iterations_run = config.iterations;
  return result;
}

SymbolVector zf_detect(const ProblemInstance& instance) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(instance.channel());
  if (!lu.isInvertible() || lu.rcond() < 1e-13)
    throw SingularChannel("zf_detect: channel matrix is numerically singular");
  return SymbolVector::from_signs(lu.solve(instance.received()));
}

SymbolVector lmmse_detect(const ProblemInstance& instance) {
  const double c = instance.snr() / static_cast<double>(instance.n());
  const Eigen::MatrixXd& h = instance.channel();
  Eigen::MatrixXd gram = c * (h.transpose() * h);
  gram.diagonal().array() += 1.0;
  const Eigen::VectorXd rhs = std::sqrt(c) * (h.transpose() * instance.received());
  return SymbolVector::from_signs(gram.llt().solve(rhs));
}

SymbolVector ml_exhaustive(const ProblemInstance& instance) {
  const std::size_t n = instance.n();
  if (n > kMaxExhaustiveDimension)
    throw GuardViolation("ml_exhaustive: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(kMaxExhaustiveDimension));
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd& h = instance.channel();
  const double scale = instance.scale();

  // Gray-code walk starting from the lexicographically smallest vector. Bit b
  // of the code maps to entry n-1-b.
  SymbolVector s(n);
  Eigen::VectorXd r = residual(instance, s);
  double c = r.squaredNorm();
  SymbolVector best = s;
  double best_cost = c;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    const std::size_t j = n - 1 - static_cast<std::size_t>(bit);
    const double step = 2.0 * scale * s[j];
    const double* col = h.col(static_cast<Eigen::Index>(j)).data();
    c = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      r[i] += step * col[i];
      c += r[i] * r[i];
    }
    s.flip(j);
    if ((k & 0x3ffu) == 0) {
      r = residual(instance, s);
      c = r.squaredNorm();
    }

    const double tol = 1e-10 * std::max(1.0, best_cost);
    if (c < best_cost - tol) {
      best = s;
      best_cost = c;
    } else if (c <= best_cost + tol) {
      // Near tie: settle on exact costs, then lexicographic order.
      const double exact_s = cost(instance, s);
      const double exact_best = cost(instance, best);
      if (exact_s < exact_best || (exact_s == exact_best && s < best)) {
        best = s;
        best_cost = c;
      }
    }
  }
  return best;
}

std::uint64_t zf_mac_count(std::size_t n) {
  // LU factorisation plus forward/back substitution.
  return n * n * n / 3 + n * n;
}

std::uint64_t lmmse_mac_count(std::size_t n) {
  // Gram matrix (symmetric half), H^T y, Cholesky, two triangular solves.
  return n * n * (n + 1) / 2 + n * n + n * n * n / 6 + n * n;
}

std::uint64_t ml_exhaustive_mac_count(std::size_t n) {
  const std::uint64_t points = std::uint64_t{1} << n;
  return n * n + n + (points - 1) * 2 * n;
}

}  // namespace gibbsmimo
