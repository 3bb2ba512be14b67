#include <cmath>
#include <limits>
#include <string>

#include "gibbsmimo/detectors.hpp"
#include "gibbsmimo/errors.hpp"

namespace gibbsmimo {

namespace {

// Depth-first search over levels n-1 .. 0 of the upper-triangular system
// ||z - R s||^2, visiting the nearer binary symbol first.
class SphereSearch {
 public:
  SphereSearch(const Eigen::MatrixXd& r, const Eigen::VectorXd& z, double squared_radius)
      : r_(r), z_(z), n_(r.rows()), radius_(squared_radius), current_(n_), best_(n_) {}

  bool run() {
    descend(n_ - 1, 0.0);
    return found_;
  }

  const Eigen::VectorXd& best() const { return best_; }
  std::uint64_t node_visits() const { return nodes_; }
  std::uint64_t macs() const { return macs_; }

 private:
  void descend(Eigen::Index level, double partial) {
    double interference = z_[level];
    for (Eigen::Index l = level + 1; l < n_; ++l) interference -= r_(level, l) * current_[l];
    macs_ += static_cast<std::uint64_t>(n_ - 1 - level);

    const double diag = r_(level, level);
    const double first = interference * diag >= 0.0 ? 1.0 : -1.0;
    for (double symbol : {first, -first}) {
      const double e = interference - diag * symbol;
      const double metric = partial + e * e;
      ++nodes_;
      ++macs_;
      // Children are visited nearest-first, so once one exceeds the radius the
      // sibling does too.
      if (metric > radius_) return;
      current_[level] = symbol;
      if (level == 0) {
        best_ = current_;
        radius_ = metric;
        found_ = true;
      } else {
        descend(level - 1, metric);
      }
    }
  }

  const Eigen::MatrixXd& r_;
  const Eigen::VectorXd& z_;
  Eigen::Index n_;
  double radius_;
  Eigen::VectorXd current_;
  Eigen::VectorXd best_;
  bool found_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t macs_ = 0;
};

}  // namespace

SphereResult sphere_detect(const ProblemInstance& instance, const RadiusInit& radius_init) {
  const std::size_t n = instance.n();

  double squared_radius = 0.0;
  const SymbolVector* fallback = nullptr;
  if (std::holds_alternative<RadiusTransmittedResidual>(radius_init)) {
    fallback = &instance.s_true();
    squared_radius = cost(instance, *fallback);
  } else if (const auto* g = std::get_if<RadiusGibbsSolution>(&radius_init)) {
    if (g->s.size() != n) throw DimensionMismatch("sphere_detect: Gibbs solution length mismatch");
    fallback = &g->s;
    squared_radius = cost(instance, *fallback);
  } else {
    squared_radius = std::get<RadiusValue>(radius_init).squared_radius;
    if (!(squared_radius >= 0.0) || std::isnan(squared_radius))
      throw InvalidArgument("sphere_detect: squared radius must be non-negative");
  }

  // The triangularised metric and cost() round differently; widen slightly so
  // a candidate defining the radius stays inside.
  const double search_radius = squared_radius * (1.0 + 1e-9) + 1e-12;

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(instance.scale() * instance.channel());
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  const Eigen::VectorXd z = qr.householderQ().transpose() * instance.received();

  SphereSearch search(r, z, search_radius);
  const bool found = search.run();

  SphereResult out;
  out.initial_squared_radius = squared_radius;
  out.node_visits = search.node_visits();
  out.mac_count = search.macs() + static_cast<std::uint64_t>(n * n);
  if (found) {
    out.s_hat = SymbolVector::from_signs(search.best());
  } else if (fallback != nullptr) {
    out.s_hat = *fallback;
  } else {
    throw EmptySphere("sphere_detect: no lattice point within squared radius " +
                      std::to_string(squared_radius));
  }
  out.best_cost = cost(instance, out.s_hat);
  return out;
}

RadiusInit radius_trick(const ProblemInstance& instance, const SymbolVector& gibbs_solution) {
  if (cost(instance, gibbs_solution) < cost(instance, instance.s_true()))
    return RadiusGibbsSolution{gibbs_solution};
  return RadiusTransmittedResidual{};
}

}  // namespace gibbsmimo
