#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace gibbsmimo {

// Temperature choice that keeps the mean stationary probability of the
// transmitted vector polynomially small, E{pi} >= n^-zeta.
//
// With L = ln n - ln ln n - ln zeta and C = 2 snr / L, admissible alphas solve
// alpha^2 / (1 - 1/alpha^2) = C, i.e. alpha^4 - C alpha^2 + C = 0. Real roots
// exist iff C >= 4; they satisfy 1 < alpha_minus <= sqrt(2) <= alpha_plus.
struct TemperatureSolution {
  std::size_t n = 0;
  double snr = 0.0;
  double zeta = 0.0;
  double l_value = 0.0;
  double c_value = 0.0;
  double beta_target = 0.0;
  std::optional<double> alpha_minus;
  std::optional<double> alpha_plus;
  bool feasible = false;
  // Set when infeasible: sqrt(2), the double root at C = 4. A heuristic only;
  // no guarantee is attached to it below the threshold.
  std::optional<double> heuristic_alpha;
  // Human-readable note for the infeasible regime (threshold snr >= 2L).
  std::string diagnostic;
};

// 1 / ln n, the default zeta.
double default_zeta(double n);

// 2 (ln n - ln ln n - ln zeta). Accepts real n so that n = e^2 can be probed.
double beta_target(double n, double zeta);

// 4 snr (1/alpha^2)(1 - 1/alpha^2). Negative for alpha < 1.
double beta_of_alpha(double snr, double alpha);

// Throws InvalidArgument when n < 2, snr <= 0, zeta <= 0 or L <= 0.
TemperatureSolution alpha_bounds(double snr, std::size_t n, double zeta);
TemperatureSolution alpha_bounds(double snr, std::size_t n);  // zeta = 1 / ln n

// Saddle-point exponent f(x) = H(x) - 0.5 ln(1 + beta x) with the binary
// entropy H in nats, and its first two derivatives. x must lie in (0, 1).
double saddle_f(double x, double beta);
double saddle_f_prime(double x, double beta);
double saddle_f_second(double x, double beta);

// Large-beta saddle point e^{-beta/2}.
double saddle_point(double beta);
// Root of saddle_f_prime on (1e-300, 0.5] by 200 geometric bisection steps.
double exact_saddle_point(double beta);

// ln sum_{i=1}^{n} C(n,i) (1 + beta i / n)^{-n/2}, evaluated exactly in log
// space. Requires 1 + beta > 0.
double log_sum_exact(std::size_t n, double beta);

// ln of the closed-form approximation sqrt(2 pi / n) exp(n e^{-beta/2} - beta/4)
// of the same sum.
double log_sum_saddle(std::size_t n, double beta);

// Jensen lower bound 1 / (1 + sum) on the mean stationary probability of the
// transmitted vector at temperature alpha. Throws GuardViolation for alpha <= 1.
double mean_pi_lower_bound(std::size_t n, double snr, double alpha);

}  // namespace gibbsmimo
