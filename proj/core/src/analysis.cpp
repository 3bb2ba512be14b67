#include "gibbsmimo/analysis.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <sstream>

#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"
#include "gibbsmimo/temperature.hpp"

namespace gibbsmimo {

double gaussian_integral_condition(double a, double eta) {
  return 1.0 - 2.0 * a * a * eta * (1.0 + 2.0 * eta);
}

double gaussian_integral_closed_form(double a, double eta, std::size_t n) {
  if (n == 0) throw InvalidArgument("gaussian_integral: n must be >= 1");
  const double cond = gaussian_integral_condition(a, eta);
  if (!(cond > 0.0)) {
    std::ostringstream msg;
    msg << "gaussian_integral: 1 - 2 a^2 eta (1 + 2 eta) = " << cond << " <= 0";
    throw GuardViolation(msg.str());
  }
  return std::pow(cond, -0.5 * static_cast<double>(n));
}

McEstimate gaussian_integral_mc(double a, double eta, std::size_t n, std::uint64_t samples,
                                RngSeed seed) {
  if (n == 0) throw InvalidArgument("gaussian_integral_mc: n must be >= 1");
  if (samples < 1000) throw InvalidArgument("gaussian_integral_mc: samples must be >= 1000");

  McEstimate out;
  // The squared integrand is the same expectation at 2 eta.
  if (!(gaussian_integral_condition(a, 2.0 * eta) > 0.0)) {
    out.second_moment_finite = false;
    out.warning = "second moment may be infinite (1 - 4 a^2 eta (1 + 4 eta) <= 0); "
                  "standard error unreliable";
  }

  RandomStream rng(seed);
  RunningStats stats;
  std::vector<double> v(n), x(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& e : v) e = rng.normal();
    for (auto& e : x) e = rng.normal();
    double shifted = 0.0;
    double base = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = v[i] + a * x[i];
      shifted += u * u;
      base += v[i] * v[i];
    }
    stats.add(std::exp(eta * (shifted - base)));
  }
  out.estimate = stats.mean();
  out.standard_error = stats.standard_error();
  out.samples = samples;
  return out;
}

BoundReport pe_union_bound(std::size_t n, double snr) {
  if (n == 0) throw InvalidArgument("pe_union_bound: n must be >= 1");
  if (!(snr > 0.0)) throw InvalidArgument("pe_union_bound: snr must be > 0");
  BoundReport report;
  report.n = n;
  report.snr = snr;
  report.per_weight_terms.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    report.per_weight_terms[i - 1] =
        log_binomial(n, i) - 0.5 * nd * std::log1p(snr * static_cast<double>(i) / nd);
  }
  report.log_pe_bound = log_sum_exp(report.per_weight_terms);
  report.vacuous = report.log_pe_bound >= 0.0;
  return report;
}

double chernoff_objective(double b) { return b * (1.0 - 2.0 * b); }

double chernoff_optimal_parameter() { return 0.25; }

double chernoff_grid_argmax(std::size_t steps) {
  if (steps == 0) throw InvalidArgument("chernoff_grid_argmax: steps must be >= 1");
  double best_b = 0.0;
  double best_v = chernoff_objective(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double b = 0.5 * static_cast<double>(k) / static_cast<double>(steps);
    const double v = chernoff_objective(b);
    if (v > best_v) {
      best_v = v;
      best_b = b;
    }
  }
  return best_b;
}

double snr_threshold(std::size_t n) {
  if (n < 2) throw InvalidArgument("snr_threshold: n must be >= 2");
  return 2.0 * std::log(static_cast<double>(n));
}

double log_expected_inv_pi_closed_form(std::size_t n, double snr, double alpha) {
  if (!(alpha > 1.0))
    throw GuardViolation("expected_inv_pi: alpha must be > 1 so that 1 + beta i / n > 0");
  const double log_sum = log_sum_exact(n, beta_of_alpha(snr, alpha));
  // ln(1 + e^s)
  return log_sum > 0.0 ? log_sum + std::log1p(std::exp(-log_sum)) : std::log1p(std::exp(log_sum));
}

double expected_inv_pi_closed_form(std::size_t n, double snr, double alpha) {
  return std::exp(log_expected_inv_pi_closed_form(n, snr, alpha));
}

InvPiEstimate expected_inv_pi_mc(std::size_t n, double snr, double alpha, std::uint64_t trials,
                                 RngSeed seed) {
  if (n == 0 || n > kMaxInvPiDimension)
    throw GuardViolation("expected_inv_pi_mc: n must be in [1, " +
                         std::to_string(kMaxInvPiDimension) + "]");
  if (!(alpha > 1.0)) throw GuardViolation("expected_inv_pi_mc: alpha must be > 1");
  if (!(snr > 0.0)) throw InvalidArgument("expected_inv_pi_mc: snr must be > 0");
  if (trials == 0) throw InvalidArgument("expected_inv_pi_mc: trials must be >= 1");

  const auto dim = static_cast<Eigen::Index>(n);
  const double step = 2.0 * std::sqrt(snr / static_cast<double>(n));
  const double inv_two_alpha_sq = 1.0 / (2.0 * alpha * alpha);
  const std::uint64_t points = std::uint64_t{1} << n;

  RandomStream rng(seed);
  RunningStats inv_pi_stats;
  RunningStats pi_stats;
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd noise(dim);
  Eigen::VectorXd u(dim);
  std::vector<bool> delta(n);

  for (std::uint64_t t = 0; t < trials; ++t) {
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) h(r, c) = rng.normal();
    for (Eigen::Index i = 0; i < dim; ++i) noise[i] = rng.normal();

    const double base = noise.squaredNorm();
    u = noise;
    std::fill(delta.begin(), delta.end(), false);
    double sum = 1.0;  // d = 0
    for (std::uint64_t k = 1; k < points; ++k) {
      const auto j = static_cast<std::size_t>(std::countr_zero(k));
      const double sign = delta[j] ? -1.0 : 1.0;
      delta[j] = !delta[j];
      u += (sign * step) * h.col(static_cast<Eigen::Index>(j));
      sum += std::exp(-(u.squaredNorm() - base) * inv_two_alpha_sq);
    }
    inv_pi_stats.add(sum);
    pi_stats.add(1.0 / sum);
  }

  InvPiEstimate out;
  out.inv_pi = {inv_pi_stats.mean(), inv_pi_stats.standard_error(), trials, true, {}};
  out.pi = {pi_stats.mean(), pi_stats.standard_error(), trials, true, {}};
  return out;
}

}  // namespace gibbsmimo
