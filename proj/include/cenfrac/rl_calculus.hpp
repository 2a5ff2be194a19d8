#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cenfrac/grid_function.hpp"
#include "cenfrac/special_functions.hpp"

namespace cenfrac {

/// Right-hand side g on (0,T] with the certificate |x^β g(x)| ≤ M x^α.
struct Forcing {
  std::function<double(double)> eval;
  Envelope envelope;
  /// g(0⁺) when g extends continuously to the origin.
  std::optional<double> value_at_zero;
  /// sup |g|, when known; lets an α = 0 certificate be traded for (sup, β).
  std::optional<double> sup_norm;
  std::string label;

  double operator()(double x) const { return eval(x); }
  bool is_zero() const noexcept { return envelope.M == 0.0; }

  static Forcing constant(double c, const FracOrder& order);
  /// g(x) = coef·x^alpha, alpha > −β.
  static Forcing power(double alpha, double coef, const FracOrder& order);
  static Forcing cosine(const FracOrder& order);
  static Forcing zero();
  /// Piecewise linear through (xs, gs), constant beyond the ends; the envelope is user supplied.
  static Forcing table(std::vector<double> xs, std::vector<double> gs, Envelope env);

  /// Envelope usable by the series: α = 0 with a known sup is re-certified as (sup, β).
  /// Throws DivergenceError when no positive exponent is available.
  Envelope certified(const FracOrder& order) const;

  /// Samples |x^β g| ≤ M x^α at 64 log-spaced points of (0,T]; writes a warning to
  /// std::clog and returns false on violation.
  bool check_envelope(double T, const FracOrder& order) const;
};

/// u with its first derivative, checked against central differences at construction.
class SmoothFn {
 public:
  SmoothFn(std::function<double(double)> eval, std::function<double(double)> deriv,
           double domain_end);

  double operator()(double x) const { return eval_(x); }
  double derivative(double x) const { return deriv_(x); }
  double domain_end() const noexcept { return domain_end_; }

  /// x ↦ c·x^alpha (alpha ≥ 0).
  static SmoothFn monomial(double alpha, double coef, double domain_end);
  static SmoothFn constant(double c, double domain_end);

 private:
  std::function<double(double)> eval_;
  std::function<double(double)> deriv_;
  double domain_end_;
};

/// J^β g(x) = ∫₀^x (x−r)^{β−1} g(r) dr / Γ(β).
double rl_integral(const std::function<double(double)>& g, const FracOrder& order, double x);
inline double rl_integral(const Forcing& g, const FracOrder& order, double x) {
  return rl_integral(g.eval, order, x);
}

/// ∂^β u(x) = u(0) x^{−β}/Γ(1−β) + J^{1−β}[u'](x).
double rl_derivative(const SmoothFn& u, const FracOrder& order, double x);

enum class DerivativeRoute { definition, jump_integral };

/// Parses "definition" / "jump_integral" (also "jump"); UsageError otherwise.
DerivativeRoute parse_route(std::string_view label);

/// D^β u(x) = ∂^β u(x) − x^{−β}u(x)/Γ(1−β), or the jump form
/// ∫₀^x (u(x)−u(x−r)) r^{−1−β} dr / |Γ(−β)|.
double censored_derivative(const SmoothFn& u, const FracOrder& order, double x,
                           DerivativeRoute route = DerivativeRoute::jump_integral);
double censored_derivative(const SmoothFn& u, const FracOrder& order, double x,
                           std::string_view route);

/// C_{α,β} Γ(α+1)/Γ(α+1−β) x^{α−β}.
double monomial_censored_derivative(double alpha, const FracOrder& order, double x);

/// J^β x^α = Γ(α+1)/Γ(α+β+1) x^{α+β}.
double monomial_rl_integral(double alpha, const FracOrder& order, double x);

/// ∂^β x^α = Γ(α+1)/Γ(α+1−β) x^{α−β}.
double monomial_rl_derivative(double alpha, const FracOrder& order, double x);

}  // namespace cenfrac
