#include "gibbsmimo/model.hpp"

#include <cmath>
#include <string>

#include "gibbsmimo/errors.hpp"

namespace gibbsmimo {

SymbolVector::SymbolVector(std::size_t n) : entries_(n, std::int8_t{-1}) {}

SymbolVector::SymbolVector(std::initializer_list<int> entries) {
  entries_.reserve(entries.size());
  for (int v : entries) {
    if (v != 1 && v != -1) throw InvalidArgument("SymbolVector: entries must be -1 or +1");
    entries_.push_back(static_cast<std::int8_t>(v));
  }
}

SymbolVector::SymbolVector(std::vector<std::int8_t> entries) : entries_(std::move(entries)) {
  for (auto v : entries_) {
    if (v != 1 && v != -1) throw InvalidArgument("SymbolVector: entries must be -1 or +1");
  }
}

SymbolVector SymbolVector::from_signs(const Eigen::VectorXd& x) {
  std::vector<std::int8_t> e(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) e[static_cast<std::size_t>(i)] = x[i] >= 0.0 ? 1 : -1;
  return SymbolVector(std::move(e));
}

void SymbolVector::set(std::size_t j, int value) {
  if (value != 1 && value != -1) throw InvalidArgument("SymbolVector: entries must be -1 or +1");
  entries_.at(j) = static_cast<std::int8_t>(value);
}

Eigen::VectorXd SymbolVector::to_eigen() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v[static_cast<Eigen::Index>(i)] = entries_[i];
  return v;
}

std::size_t hamming_distance(const SymbolVector& a, const SymbolVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

ProblemInstance::ProblemInstance(double snr, Eigen::MatrixXd channel, Eigen::VectorXd received,
                                 SymbolVector s_true)
    : snr_(snr),
      channel_(std::move(channel)),
      received_(std::move(received)),
      s_true_(std::move(s_true)) {
  if (!(snr_ > 0.0) || !std::isfinite(snr_)) throw InvalidArgument("ProblemInstance: snr must be > 0");
  const auto n = channel_.rows();
  if (n == 0) throw InvalidArgument("ProblemInstance: n must be >= 1");
  if (channel_.cols() != n) throw DimensionMismatch("ProblemInstance: channel must be square");
  if (received_.size() != n || static_cast<Eigen::Index>(s_true_.size()) != n)
    throw DimensionMismatch("ProblemInstance: received and s_true must have length n");
  scale_ = std::sqrt(snr_ / static_cast<double>(n));
}

TracedInstance generate_traced_instance(std::size_t n, double snr, SymbolPolicy policy,
                                        RngSeed seed) {
  if (n == 0) throw InvalidArgument("generate_instance: n must be >= 1");
  if (!(snr > 0.0) || !std::isfinite(snr)) throw InvalidArgument("generate_instance: snr must be > 0");

  RandomStream rng(seed);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd h(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) h(r, c) = rng.normal();

  SymbolVector s(n);
  if (policy == SymbolPolicy::uniform_random) {
    for (std::size_t j = 0; j < n; ++j) s.set(j, rng.coin() ? 1 : -1);
  }

  Eigen::VectorXd noise(dim);
  for (Eigen::Index i = 0; i < dim; ++i) noise[i] = rng.normal();

  const double scale = std::sqrt(snr / static_cast<double>(n));
  Eigen::VectorXd y = scale * (h * s.to_eigen()) + noise;
  return {ProblemInstance(snr, std::move(h), std::move(y), std::move(s)), std::move(noise)};
}

ProblemInstance generate_instance(std::size_t n, double snr, SymbolPolicy policy, RngSeed seed) {
  return std::move(generate_traced_instance(n, snr, policy, seed).instance);
}

Eigen::VectorXd residual(const ProblemInstance& instance, const SymbolVector& s) {
  if (s.size() != instance.n())
    throw DimensionMismatch("cost: symbol vector length " + std::to_string(s.size()) +
                            " does not match n = " + std::to_string(instance.n()));
  return instance.received() - instance.scale() * (instance.channel() * s.to_eigen());
}

double cost(const ProblemInstance& instance, const SymbolVector& s) {
  return residual(instance, s).squaredNorm();
}

double snr_db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double snr_linear_to_db(double snr) { return 10.0 * std::log10(snr); }

}  // namespace gibbsmimo
