#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace gibbsmimo {

// Shortest decimal that round-trips to the same double.
std::string shortest_repr(double x);

// ln C(n, k) via lgamma.
double log_binomial(std::size_t n, std::size_t k);

// ln sum exp(x_i); -inf for an empty span.
double log_sum_exp(std::span<const double> x);

// Streaming mean/variance (Welford). Merging is associative up to rounding;
// callers needing bit-identical results merge in a fixed order.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  double standard_error() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace gibbsmimo
