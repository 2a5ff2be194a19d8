#include "cenfrac/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cenfrac/errors.hpp"

namespace cenfrac {

double cusp_exponent(const std::optional<Envelope>& env) {
  if (!env || !(env->alpha > 0.0)) return 1.0;
  return env->alpha / std::ceil(env->alpha);
}

GridSpec::GridSpec(double domain_end, double cusp_exponent, int order)
    : domain_end_(domain_end), a_(cusp_exponent), order_(order) {
  if (!(domain_end > 0.0) || !std::isfinite(domain_end)) {
    throw DomainError("grid: domain end must be positive and finite");
  }
  if (!(cusp_exponent > 0.0) || cusp_exponent > 1.0) {
    throw DomainError("grid: cusp exponent must lie in (0,1]");
  }
  if (order < 2) throw DomainError("grid: order must be >= 2");
  w_ = chebyshev_lobatto<double>(order, 0.0, std::pow(domain_end, a_));
  x_.resize(order + 1);
  for (int k = 0; k <= order; ++k) x_(k) = std::pow(w_(k), 1.0 / a_);
  x_(0) = 0.0;
  x_(order) = domain_end;
  lam_ = lobatto_barycentric_weights<double>(order);
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, double domain_end,
                                  std::optional<Envelope> env, int order,
                                  std::optional<double> origin_value) {
  GridSpec grid(domain_end, cusp_exponent(env), order);
  Eigen::VectorXd full(order + 1);
  if (env && env->alpha > 0.0) {
    full(0) = 0.0;
  } else {
    full(0) = origin_value ? *origin_value : f(0.0);
  }
  for (int k = 1; k <= order; ++k) full(k) = f(grid.x_nodes()(k));
  return on_grid(grid, std::move(full), env);
}

GridFunction GridFunction::on_grid(const GridSpec& grid, Eigen::VectorXd full_values,
                                   std::optional<Envelope> env) {
  if (full_values.size() != grid.order() + 1) {
    throw ContractError("grid function: value count does not match the grid");
  }
  GridFunction g;
  g.domain_end_ = grid.domain_end();
  g.nodes_ = grid.x_nodes().tail(grid.order());
  g.values_ = full_values.tail(grid.order());
  g.origin_ = full_values(0);
  g.envelope_ = env;
  g.grid_ = grid;
  if (env && env->alpha > 0.0 && g.origin_ != 0.0) {
    throw ContractError("grid function: an envelope forces the origin value to 0");
  }
  g.check_envelope();
  return g;
}

GridFunction::GridFunction(double domain_end, Eigen::VectorXd nodes, Eigen::VectorXd values,
                           std::optional<Envelope> env)
    : domain_end_(domain_end), nodes_(std::move(nodes)), values_(std::move(values)),
      envelope_(env) {
  if (!(domain_end_ > 0.0)) throw DomainError("grid function: domain end must be positive");
  if (nodes_.size() != values_.size() || nodes_.size() == 0) {
    throw ContractError("grid function: nodes and values must be non-empty and of equal length");
  }
  for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_(i) > 0.0) || nodes_(i) > domain_end_) {
      throw ContractError("grid function: nodes must lie in (0,T]");
    }
    if (i > 0 && !(nodes_(i) > nodes_(i - 1))) {
      throw ContractError("grid function: nodes must be strictly increasing");
    }
  }
  check_envelope();
}

void GridFunction::check_envelope() const {
  if (!envelope_) return;
  const auto [M, alpha] = *envelope_;
  if (!(M >= 0.0) || !(alpha >= 0.0)) {
    throw ContractError("grid function: envelope needs M >= 0 and alpha >= 0");
  }
  const double slack = 1e-14 * M * std::pow(domain_end_, alpha);
  for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
    const double bound = M * std::pow(nodes_(i), alpha);
    if (std::abs(values_(i)) > bound * (1.0 + 1e-12) + slack) {
      throw ContractError("grid function: value " + std::to_string(values_(i)) + " at x=" +
                          std::to_string(nodes_(i)) + " exceeds the envelope bound " +
                          std::to_string(bound));
    }
  }
}

const GridSpec& GridFunction::grid() const {
  if (!grid_) throw ContractError("grid function: no interpolation contract on these nodes");
  return *grid_;
}

Eigen::VectorXd GridFunction::full_values() const {
  Eigen::VectorXd full(values_.size() + 1);
  full(0) = origin_;
  full.tail(values_.size()) = values_;
  return full;
}

double GridFunction::operator()(double x) const {
  if (!(x >= 0.0) || x > domain_end_ * (1.0 + 1e-14)) {
    throw DomainError("grid function: evaluation point outside [0,T]");
  }
  if (!grid_) {
    // Raw samples: only node values are defined.
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
      if (nodes_(i) == x) return values_(i);
    }
    throw ContractError("grid function: no interpolation contract on these nodes");
  }
  if (x == 0.0) return origin_;
  const double w = grid_->to_w(std::min(x, domain_end_));
  return barycentric_eval<double>(grid_->w_nodes(), grid_->bary_weights(), full_values(), w);
}

double GridFunction::derivative(double x) const {
  if (!(x > 0.0) || x > domain_end_ * (1.0 + 1e-14)) {
    throw DomainError("grid function: derivative needs x in (0,T]");
  }
  const GridSpec& g = grid();
  x = std::min(x, domain_end_);
  const double a = g.cusp_exponent();
  const double dw = barycentric_derivative<double>(g.w_nodes(), g.bary_weights(), full_values(),
                                                   g.to_w(x));
  return dw * a * std::pow(x, a - 1.0);
}

double GridFunction::sup_norm() const {
  return std::max(std::abs(origin_), values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0);
}

}  // namespace cenfrac
