#include "cenfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace cenfrac::quad {

namespace {

constexpr double kPanelRatio = 0.1;
constexpr double kSingularFloor = 1e-80;

struct RuleBuilder {
  std::vector<double> nodes;
  std::vector<double> weights;

  void add(const RuleD& panel) {
    for (Eigen::Index i = 0; i < panel.size(); ++i) {
      nodes.push_back(panel.nodes(i));
      weights.push_back(panel.weights(i));
    }
  }
  RuleD finish() const {
    RuleD r;
    r.nodes = Eigen::Map<const Eigen::VectorXd>(nodes.data(), static_cast<Eigen::Index>(nodes.size()));
    r.weights =
        Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
    return r;
  }
};

RuleD build_singular_unit_rule(double c, double d, int order) {
  const RuleD legendre = gauss_legendre<double>(order);
  RuleBuilder b;

  // Last panel [0, h]: weight t^c absorbed by Gauss-Jacobi (a = 0, b = c).
  int levels = static_cast<int>(std::ceil(std::log(kSingularFloor / 0.5) / std::log(kPanelRatio)));
  const double h_last = 0.5 * std::pow(kPanelRatio, levels);
  {
    const RuleD gj = gauss_jacobi<double>(order, 0.0, c);
    const double half = 0.5 * h_last;
    RuleD panel;
    panel.nodes = (gj.nodes.array() + 1.0) * half;
    panel.weights.resize(order);
    for (int i = 0; i < order; ++i) {
      const double t = panel.nodes(i);
      panel.weights(i) = gj.weights(i) * std::pow(half, c + 1.0) * std::pow(1.0 - t, d);
    }
    b.add(panel);
  }
  // Geometric panels [h_{k+1}, h_k].
  for (int k = levels - 1; k >= 0; --k) {
    const double hi = 0.5 * std::pow(kPanelRatio, k);
    const double lo = hi * kPanelRatio;
    RuleD panel = mapped(legendre, lo, hi);
    for (int i = 0; i < order; ++i) {
      const double t = panel.nodes(i);
      panel.weights(i) *= std::pow(t, c) * std::pow(1.0 - t, d);
    }
    b.add(panel);
  }
  // Right panel [1/2, 1]: weight (1−t)^d by Gauss-Jacobi (a = d, b = 0).
  {
    const RuleD gj = gauss_jacobi<double>(order, d, 0.0);
    RuleD panel;
    panel.nodes = 0.75 + 0.25 * gj.nodes.array();
    panel.weights.resize(order);
    for (int i = 0; i < order; ++i) {
      panel.weights(i) = gj.weights(i) * std::pow(0.25, d + 1.0) * std::pow(panel.nodes(i), c);
    }
    b.add(panel);
  }
  return b.finish();
}

}  // namespace

std::shared_ptr<const RuleD> singular_unit_rule(double c, double d, int order) {
  if (!(c > -1.0) || !(d > -1.0)) throw DomainError("singular_unit_rule: exponents must exceed -1");
  if (order < 4) throw DomainError("singular_unit_rule: order must be >= 4");
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const RuleD>> cache;
  const auto key = std::make_tuple(c, d, order);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const RuleD>(build_singular_unit_rule(c, d, order));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

std::shared_ptr<const RuleD> legendre_rule(int order) {
  if (order < 1) throw DomainError("legendre_rule: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const RuleD>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_shared<const RuleD>(gauss_legendre<double>(order));
  return slot;
}

RuleD two_sided_graded_rule(double lo, double hi, double floor_lo, double floor_hi, int order,
                            double ratio) {
  if (!(hi > lo)) throw DomainError("two_sided_graded_rule: empty interval");
  const RuleD& legendre = *legendre_rule(order);
  const double mid = 0.5 * (lo + hi);
  const double eps = 8.0 * std::numeric_limits<double>::epsilon();
  floor_lo = std::max(floor_lo, eps * std::max(std::abs(lo), 1e-300));
  floor_hi = std::max(floor_hi, eps * std::max(std::abs(hi), 1e-300));
  RuleBuilder b;

  std::vector<double> left{lo};
  for (double w = (mid - lo) * ratio; w > floor_lo; w *= ratio) left.push_back(lo + w);
  std::sort(left.begin(), left.end());
  left.push_back(mid);
  for (std::size_t k = 0; k + 1 < left.size(); ++k) b.add(mapped(legendre, left[k], left[k + 1]));

  std::vector<double> right{mid};
  for (double w = (hi - mid) * ratio; w > floor_hi; w *= ratio) right.push_back(hi - w);
  std::sort(right.begin(), right.end());
  right.push_back(hi);
  for (std::size_t k = 0; k + 1 < right.size(); ++k) b.add(mapped(legendre, right[k], right[k + 1]));
  return b.finish();
}

}  // namespace cenfrac::quad
