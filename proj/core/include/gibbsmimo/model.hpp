#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "gibbsmimo/rng.hpp"

namespace gibbsmimo {

// Vector over the binary constellation {-1, +1}.
class SymbolVector {
 public:
  SymbolVector() = default;
  // All entries -1.
  explicit SymbolVector(std::size_t n);
  SymbolVector(std::initializer_list<int> entries);
  explicit SymbolVector(std::vector<std::int8_t> entries);

  static SymbolVector all_minus_one(std::size_t n) { return SymbolVector(n); }
  // Sign slicer: +1 for x >= 0, -1 otherwise.
  static SymbolVector from_signs(const Eigen::VectorXd& x);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  void set(std::size_t j, int value);
  void flip(std::size_t j) { entries_[j] = static_cast<std::int8_t>(-entries_[j]); }

  Eigen::VectorXd to_eigen() const;
  std::span<const std::int8_t> entries() const { return entries_; }

  // Lexicographic with -1 < +1.
  friend auto operator<=>(const SymbolVector&, const SymbolVector&) = default;
  friend bool operator==(const SymbolVector&, const SymbolVector&) = default;

 private:
  std::vector<std::int8_t> entries_;
};

std::size_t hamming_distance(const SymbolVector& a, const SymbolVector& b);

// One detection problem y = sqrt(snr/n) H s + noise. Immutable once built.
class ProblemInstance {
 public:
  ProblemInstance(double snr, Eigen::MatrixXd channel, Eigen::VectorXd received,
                  SymbolVector s_true);

  std::size_t n() const { return static_cast<std::size_t>(channel_.cols()); }
  double snr() const { return snr_; }
  // sqrt(snr / n), the per-entry amplitude of H in the received signal.
  double scale() const { return scale_; }
  const Eigen::MatrixXd& channel() const { return channel_; }
  const Eigen::VectorXd& received() const { return received_; }
  const SymbolVector& s_true() const { return s_true_; }

 private:
  double snr_;
  double scale_;
  Eigen::MatrixXd channel_;
  Eigen::VectorXd received_;
  SymbolVector s_true_;
};

enum class SymbolPolicy { all_minus_one, uniform_random };

// Instance plus the noise that produced it; used by tests and analysis code
// that compare against ||noise||^2.
struct TracedInstance {
  ProblemInstance instance;
  Eigen::VectorXd noise;
};

// Draws H (row-major order), then s (uniform policy only), then the noise,
// all from the single stream `seed`. Pure function of its arguments.
ProblemInstance generate_instance(std::size_t n, double snr, SymbolPolicy policy, RngSeed seed);
TracedInstance generate_traced_instance(std::size_t n, double snr, SymbolPolicy policy,
                                        RngSeed seed);

// Residual y - sqrt(snr/n) H s.
Eigen::VectorXd residual(const ProblemInstance& instance, const SymbolVector& s);
// ||y - sqrt(snr/n) H s||^2.
double cost(const ProblemInstance& instance, const SymbolVector& s);

double snr_db_to_linear(double snr_db);
double snr_linear_to_db(double snr);

}  // namespace gibbsmimo
