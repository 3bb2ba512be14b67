#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gibbsmimo/rng.hpp"

namespace gibbsmimo {

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  // False when the integrand's second moment may be infinite; the standard
  // error is then not trustworthy.
  bool second_moment_finite = true;
  std::string warning;
};

// Lemma: for v, x ~ N(0, I_n) independent,
//   E exp(eta (||v + a x||^2 - ||v||^2)) = (1 - 2 a^2 eta (1 + 2 eta))^{-n/2}
// provided 1 - 2 a^2 eta (1 + 2 eta) > 0.
double gaussian_integral_condition(double a, double eta);
// Throws GuardViolation (quoting the offending value) when the condition fails.
double gaussian_integral_closed_form(double a, double eta, std::size_t n);
// Plain Monte Carlo of the same expectation; samples >= 1000.
McEstimate gaussian_integral_mc(double a, double eta, std::size_t n, std::uint64_t samples,
                                RngSeed seed);

// Union/Chernoff bound on the ML vector error probability,
//   P_e <= sum_{i=1}^{n} C(n,i) (1 + snr i / n)^{-n/2},
// held in log form. per_weight_terms[i-1] is the term for Hamming weight i.
struct BoundReport {
  std::size_t n = 0;
  double snr = 0.0;
  double log_pe_bound = 0.0;
  std::vector<double> per_weight_terms;
  bool vacuous = false;  // bound >= 1
};
BoundReport pe_union_bound(std::size_t n, double snr);

// Chernoff exponent b (1 - 2b) and its maximiser.
double chernoff_objective(double b);
double chernoff_optimal_parameter();
// Grid argmax of chernoff_objective over [0, 0.5] with `steps` intervals.
double chernoff_grid_argmax(std::size_t steps);

// 2 ln n: snr above this drives the ML error probability to zero.
double snr_threshold(std::size_t n);

// E{1/pi} = 1 + sum_{i=1}^{n} C(n,i) (1 + beta i / n)^{-n/2} with
// beta = beta_of_alpha(snr, alpha); pi is the stationary probability of the
// transmitted vector. Throws GuardViolation for alpha <= 1.
double expected_inv_pi_closed_form(std::size_t n, double snr, double alpha);
double log_expected_inv_pi_closed_form(std::size_t n, double snr, double alpha);

inline constexpr std::size_t kMaxInvPiDimension = 12;

struct InvPiEstimate {
  McEstimate inv_pi;  // mean of 1/pi
  McEstimate pi;      // mean of pi
};

// Draws (noise, H) per trial and sums
//   exp(-(||noise + 2 sqrt(snr/n) H d||^2 - ||noise||^2) / (2 alpha^2))
// over all 2^n binary vectors d. Throws GuardViolation for n > 12 or alpha <= 1.
InvPiEstimate expected_inv_pi_mc(std::size_t n, double snr, double alpha, std::uint64_t trials,
                                 RngSeed seed);

}  // namespace gibbsmimo
