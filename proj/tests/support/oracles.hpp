#pragma once

// Independent reference computations for tests. Nothing here calls the code
// under test beyond constructing inputs.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gibbsmimo/model.hpp"

namespace gibbsmimo::oracle {

// Binomial coefficient by the multiplicative formula in long double.
inline long double binomial(std::size_t n, std::size_t k) {
  long double r = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r;
}

// sum_{i=1}^{n} C(n,i) (1 + beta i/n)^{-n/2}, plain summation (moderate n).
inline long double direct_sum(std::size_t n, long double beta) {
  long double s = 0.0L;
  for (std::size_t i = 1; i <= n; ++i)
    s += binomial(n, i) * std::pow(1.0L + beta * i / n, -0.5L * n);
  return s;
}

// Largest root in alpha of alpha^4 - c alpha^2 + c = 0 by bisection on
// [sqrt(2), sqrt(c) + 1]; smallest root by bisection on (1, sqrt(2)].
inline long double quartic_root_plus(long double c) {
  auto q = [c](long double a) { return a * a * a * a - c * a * a + c; };
  long double lo = std::sqrt(2.0L), hi = std::sqrt(c) + 1.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (q(mid) < 0.0L ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}
inline long double quartic_root_minus(long double c) {
  auto q = [c](long double a) { return a * a * a * a - c * a * a + c; };
  long double lo = 1.0L, hi = std::sqrt(2.0L);
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (q(mid) > 0.0L ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

// ||y - scale H s||^2 with an explicit double loop.
inline double brute_cost(const Eigen::MatrixXd& h, double scale, const Eigen::VectorXd& y,
                         const std::vector<int>& s) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    double acc = y[r];
    for (Eigen::Index c = 0; c < h.cols(); ++c) acc -= scale * h(r, c) * s[static_cast<std::size_t>(c)];
    total += acc * acc;
  }
  return total;
}

// Lexicographically smallest global minimiser by enumeration from scratch.
inline std::vector<int> brute_ml(const Eigen::MatrixXd& h, double scale, const Eigen::VectorXd& y) {
  const auto n = static_cast<std::size_t>(h.cols());
  std::vector<int> best, s(n);
  double best_cost = INFINITY;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    // entry 0 is the most significant bit so increasing m is lexicographic.
    for (std::size_t j = 0; j < n; ++j) s[j] = (m >> (n - 1 - j)) & 1 ? 1 : -1;
    const double c = brute_cost(h, scale, y, s);
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  return best;
}

inline std::vector<int> to_ints(const SymbolVector& s) {
  std::vector<int> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i];
  return out;
}

// Instance with y = scale H s exactly.
inline ProblemInstance noiseless(const ProblemInstance& base) {
  Eigen::VectorXd y = base.scale() * (base.channel() * base.s_true().to_eigen());
  return ProblemInstance(base.snr(), base.channel(), std::move(y), base.s_true());
}

// Upper-tail chi-square critical value at significance 1e-3 for df = 15.
inline constexpr double kChiSquare15At1e3 = 37.697;

}  // namespace gibbsmimo::oracle
