#include "gibbsmimo/temperature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "gibbsmimo/errors.hpp"
#include "gibbsmimo/numerics.hpp"

namespace gibbsmimo {

double default_zeta(double n) {
  if (!(n > 1.0)) throw InvalidArgument("default_zeta: n must be > 1");
  return 1.0 / std::log(n);
}

double beta_target(double n, double zeta) {
  if (!(n >= 2.0)) throw InvalidArgument("beta_target: n must be >= 2 (ln ln n undefined)");
  if (!(zeta > 0.0)) throw InvalidArgument("beta_target: zeta must be > 0");
  return 2.0 * (std::log(n) - std::log(std::log(n)) - std::log(zeta));
}

double beta_of_alpha(double snr, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("beta_of_alpha: alpha must be > 0");
  const double inv = 1.0 / (alpha * alpha);
  return 4.0 * snr * inv * (1.0 - inv);
}

TemperatureSolution alpha_bounds(double snr, std::size_t n, double zeta) {
  if (n < 2) throw InvalidArgument("alpha_bounds: n must be >= 2");
  if (!(snr > 0.0)) throw InvalidArgument("alpha_bounds: snr must be > 0");
  if (!(zeta > 0.0)) throw InvalidArgument("alpha_bounds: zeta must be > 0");

  TemperatureSolution sol;
  sol.n = n;
  sol.snr = snr;
  sol.zeta = zeta;
  sol.beta_target = beta_target(static_cast<double>(n), zeta);
  sol.l_value = 0.5 * sol.beta_target;
  if (!(sol.l_value > 0.0)) {
    std::ostringstream msg;
    msg << "alpha_bounds: L = ln n - ln ln n - ln zeta = " << sol.l_value
        << " <= 0; zeta too large for n = " << n;
    throw InvalidArgument(msg.str());
  }
  sol.c_value = 2.0 * snr / sol.l_value;

  const double c = sol.c_value;
  const double disc = c * c - 4.0 * c;
  if (disc < 0.0) {
    sol.feasible = false;
    sol.heuristic_alpha = std::numbers::sqrt2;
    std::ostringstream msg;
    msg << "infeasible: C = " << c << " < 4; real roots need snr >= 2L = " << 2.0 * sol.l_value;
    sol.diagnostic = msg.str();
    return sol;
  }
  // alpha^2 roots (C +- sqrt(C^2 - 4C)) / 2. The smaller one via the product
  // of roots (= C) to avoid cancellation.
  const double big = 0.5 * (c + std::sqrt(disc));
  const double small = c / big;
  sol.alpha_plus = std::sqrt(big);
  sol.alpha_minus = std::sqrt(small);
  sol.feasible = true;
  return sol;
}

TemperatureSolution alpha_bounds(double snr, std::size_t n) {
  return alpha_bounds(snr, n, default_zeta(static_cast<double>(n)));
}

namespace {
void check_open_unit(double x, const char* where) {
  if (!(x > 0.0 && x < 1.0)) throw InvalidArgument(std::string(where) + ": x must lie in (0, 1)");
}
}  // namespace

double saddle_f(double x, double beta) {
  check_open_unit(x, "saddle_f");
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x) - 0.5 * std::log1p(beta * x);
}

double saddle_f_prime(double x, double beta) {
  check_open_unit(x, "saddle_f_prime");
  return std::log((1.0 - x) / x) - 0.5 * beta / (1.0 + beta * x);
}

double saddle_f_second(double x, double beta) {
  check_open_unit(x, "saddle_f_second");
  const double d = 1.0 + beta * x;
  return -1.0 / x - 1.0 / (1.0 - x) + 0.5 * beta * beta / (d * d);
}

double saddle_point(double beta) { return std::exp(-0.5 * beta); }

double exact_saddle_point(double beta) {
  // f' is decreasing on the bracket; f'(0.5) = -(beta/2)/(1+beta/2) <= 0.
  double hi = 0.5;
  if (saddle_f_prime(hi, beta) >= 0.0) return hi;
  double lo = 1e-300;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (saddle_f_prime(mid, beta) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

double log_sum_exact(std::size_t n, double beta) {
  if (n == 0) throw InvalidArgument("log_sum_exact: n must be >= 1");
  if (!(1.0 + beta > 0.0)) throw InvalidArgument("log_sum_exact: requires 1 + beta > 0");
  const double nd = static_cast<double>(n);
  std::vector<double> terms(n);
  for (std::size_t i = 1; i <= n; ++i) {
    terms[i - 1] = log_binomial(n, i) - 0.5 * nd * std::log1p(beta * static_cast<double>(i) / nd);
  }
  return log_sum_exp(terms);
}

double log_sum_saddle(std::size_t n, double beta) {
  if (n == 0) throw InvalidArgument("log_sum_saddle: n must be >= 1");
  const double nd = static_cast<double>(n);
  return 0.5 * std::log(2.0 * std::numbers::pi / nd) + nd * std::exp(-0.5 * beta) - 0.25 * beta;
}

double mean_pi_lower_bound(std::size_t n, double snr, double alpha) {
  if (!(alpha > 1.0))
    throw GuardViolation("mean_pi_lower_bound: alpha must be > 1 (beta would be <= 0)");
  const double log_sum = log_sum_exact(n, beta_of_alpha(snr, alpha));
  // 1 / (1 + e^s) computed without overflow.
  return log_sum > 0.0 ? std::exp(-log_sum) / (1.0 + std::exp(-log_sum))
                       : 1.0 / (1.0 + std::exp(log_sum));
}

}  // namespace gibbsmimo
