#include "cenfrac/rl_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "cenfrac/errors.hpp"
#include "cenfrac/quadrature.hpp"

namespace cenfrac {

// ---------------------------------------------------------------- Forcing

Forcing Forcing::constant(double c, const FracOrder& order) {
  Forcing f;
  f.eval = [c](double) { return c; };
  f.envelope = {std::abs(c), order.beta()};
  f.value_at_zero = c;
  f.sup_norm = std::abs(c);
  f.label = "const";
  return f;
}

Forcing Forcing::power(double alpha, double coef, const FracOrder& order) {
  if (!std::isfinite(alpha) || !std::isfinite(coef)) throw DomainError("power forcing: non-finite parameter");
  Forcing f;
  if (alpha == 0.0) {
    f.eval = [coef](double) { return coef; };
  } else {
    f.eval = [alpha, coef](double x) { return coef * std::pow(x, alpha); };
  }
  f.envelope = {std::abs(coef), alpha + order.beta()};
  if (alpha > 0.0) f.value_at_zero = 0.0;
  if (alpha == 0.0) {
    f.value_at_zero = coef;
    f.sup_norm = std::abs(coef);
  }
  f.label = "pow";
  return f;
}

Forcing Forcing::cosine(const FracOrder& order) {
  Forcing f;
  f.eval = [](double x) { return std::cos(x); };
  f.envelope = {1.0, order.beta()};
  f.value_at_zero = 1.0;
  f.sup_norm = 1.0;
  f.label = "cos";
  return f;
}

Forcing Forcing::zero() {
  Forcing f;
  f.eval = [](double) { return 0.0; };
  f.envelope = {0.0, 1.0};
  f.value_at_zero = 0.0;
  f.sup_norm = 0.0;
  f.label = "zero";
  return f;
}

Forcing Forcing::table(std::vector<double> xs, std::vector<double> gs, Envelope env) {
  if (xs.size() != gs.size() || xs.empty()) {
    throw UsageError("table forcing: need matching, non-empty x and g columns");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw UsageError("table forcing: x column must be strictly increasing");
  }
  if (!(env.M >= 0.0)) throw UsageError("table forcing: envelope M must be >= 0");
  Forcing f;
  f.envelope = env;
  if (xs.front() == 0.0) f.value_at_zero = gs.front();
  double sup = 0.0;
  for (double g : gs) sup = std::max(sup, std::abs(g));
  f.sup_norm = sup;
  f.eval = [xs = std::move(xs), gs = std::move(gs)](double x) {
    if (x <= xs.front()) return gs.front();
    if (x >= xs.back()) return gs.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double s = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return gs[i - 1] + s * (gs[i] - gs[i - 1]);
  };
  f.label = "table";
  return f;
}

Envelope Forcing::certified(const FracOrder& order) const {
  if (envelope.alpha > 0.0) return envelope;
  if (envelope.alpha == 0.0 && sup_norm) return {*sup_norm, order.beta()};
  throw DivergenceError(
      "forcing envelope exponent alpha must be > 0 (alpha = 0 can fail; a bounded g may be "
      "re-certified with alpha = beta when its sup norm is known)");
}

bool Forcing::check_envelope(double T, const FracOrder& order) const {
  bool ok = true;
  for (int i = 0; i < 64; ++i) {
    const double x = T * std::pow(10.0, -6.0 + 6.0 * i / 63.0);
    const double lhs = std::pow(x, order.beta()) * std::abs(eval(x));
    const double rhs = envelope.M * std::pow(x, envelope.alpha);
    if (lhs > rhs * (1.0 + 1e-9) + 1e-300) {
      std::clog << "warning: forcing '" << label << "' exceeds its envelope at x=" << x << " ("
                << lhs << " > " << rhs << ")\n";
      ok = false;
      break;
    }
  }
  return ok;
}

// --------------------------------------------------------------- SmoothFn

SmoothFn::SmoothFn(std::function<double(double)> eval, std::function<double(double)> deriv,
                   double domain_end)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), domain_end_(domain_end) {
  if (!(domain_end_ > 0.0)) throw DomainError("SmoothFn: domain end must be positive");
  for (int i = 1; i <= 16; ++i) {
    const double x = domain_end_ * i / 17.0;
    const double h = 1e-5 * x;
    const double fd = (eval_(x + h) - eval_(x - h)) / (2.0 * h);
    const double d = deriv_(x);
    if (!(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)))) {
      throw ContractError("SmoothFn: derivative disagrees with central differences at x=" +
                          std::to_string(x));
    }
  }
}

SmoothFn SmoothFn::monomial(double alpha, double coef, double domain_end) {
  if (!(alpha >= 0.0)) throw DomainError("SmoothFn::monomial: alpha must be >= 0");
  if (alpha == 0.0) return constant(coef, domain_end);
  return SmoothFn([alpha, coef](double x) { return coef * std::pow(x, alpha); },
                  [alpha, coef](double x) { return coef * alpha * std::pow(x, alpha - 1.0); },
                  domain_end);
}

SmoothFn SmoothFn::constant(double c, double domain_end) {
  return SmoothFn([c](double) { return c; }, [](double) { return 0.0; }, domain_end);
}

// -------------------------------------------------------------- operators

double rl_integral(const std::function<double(double)>& g, const FracOrder& order, double x) {
  if (!(x > 0.0)) throw DomainError("rl_integral: x must be positive");
  const double b = order.beta();
  const auto rule = quad::singular_unit_rule(0.0, b - 1.0);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule->size(); ++q) sum += rule->weights(q) * g(x * rule->nodes(q));
  return std::pow(x, b) / order.gamma_b() * sum;
}

double rl_derivative(const SmoothFn& u, const FracOrder& order, double x) {
  if (!(x > 0.0)) throw DomainError("rl_derivative: x must be positive");
  const double b = order.beta();
  const auto rule = quad::singular_unit_rule(0.0, -b);
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule->size(); ++q) {
    sum += rule->weights(q) * u.derivative(x * rule->nodes(q));
  }
  return (u(0.0) * std::pow(x, -b) + std::pow(x, 1.0 - b) * sum) / order.gamma_1mb();
}

DerivativeRoute parse_route(std::string_view label) {
  if (label == "definition") return DerivativeRoute::definition;
  if (label == "jump_integral" || label == "jump") return DerivativeRoute::jump_integral;
  throw UsageError("unknown derivative route '" + std::string(label) +
                   "' (expected definition or jump_integral)");
}

namespace {

double jump_integral(const SmoothFn& u, const FracOrder& order, double x) {
  const double b = order.beta();
  const double g_neg = order.abs_gamma_neg();
  const double eps = 1e-4 * x;
  const double d1 = u.derivative(x);
  const double d2 = (d1 - u.derivative(x - eps)) / eps;
  // u(x) − u(x−r) ≈ u'(x) r − u''(x) r²/2 on (0, ε).
  const double near = d1 * std::pow(eps, 1.0 - b) / (1.0 - b) -
                      d2 * std::pow(eps, 2.0 - b) / (2.0 * (2.0 - b));
  // r = x t on (ε, x).
  const double t0 = eps / x;
  const quad::RuleD rule = quad::two_sided_graded_rule(t0, 1.0, 1e-3 * t0, 1e-14);
  const double ux = u(x);
  double far = 0.0;
  for (Eigen::Index q = 0; q < rule.size(); ++q) {
    const double t = rule.nodes(q);
    far += rule.weights(q) * (ux - u(x - x * t)) * std::pow(t, -1.0 - b);
  }
  far *= std::pow(x, -b);
  return (near + far) / g_neg;
}

}  // namespace

double censored_derivative(const SmoothFn& u, const FracOrder& order, double x,
                           DerivativeRoute route) {
  if (!(x > 0.0)) throw DomainError("censored_derivative: x must be positive");
  if (x > u.domain_end() * (1.0 + 1e-14)) throw DomainError("censored_derivative: x beyond T");
  if (route == DerivativeRoute::definition) {
    return rl_derivative(u, order, x) - std::pow(x, -order.beta()) * u(x) / order.gamma_1mb();
  }
  return jump_integral(u, order, x);
}

double censored_derivative(const SmoothFn& u, const FracOrder& order, double x,
                           std::string_view route) {
  return censored_derivative(u, order, x, parse_route(route));
}

double monomial_censored_derivative(double alpha, const FracOrder& order, double x) {
  if (!(alpha > 0.0)) throw DomainError("monomial_censored_derivative: alpha must be > 0");
  if (!(x > 0.0)) throw DomainError("monomial_censored_derivative: x must be positive");
  return c_coeff(alpha, order) * monomial_rl_derivative(alpha, order, x);
}

double monomial_rl_integral(double alpha, const FracOrder& order, double x) {
  if (!(alpha > -1.0)) throw DomainError("monomial_rl_integral: alpha must exceed -1");
  if (!(x >= 0.0)) throw DomainError("monomial_rl_integral: x must be >= 0");
  return gamma_ratio(alpha + 1.0, alpha + order.beta() + 1.0) * std::pow(x, alpha + order.beta());
}

double monomial_rl_derivative(double alpha, const FracOrder& order, double x) {
  if (!(alpha >= 0.0)) throw DomainError("monomial_rl_derivative: alpha must be >= 0");
  if (!(x > 0.0)) throw DomainError("monomial_rl_derivative: x must be positive");
  return gamma_ratio(alpha + 1.0, alpha + 1.0 - order.beta()) * std::pow(x, alpha - order.beta());
}

}  // namespace cenfrac
