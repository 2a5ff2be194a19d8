#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "cenfrac/grid_function.hpp"
#include "cenfrac/rl_calculus.hpp"
#include "cenfrac/special_functions.hpp"

namespace cenfrac {

/// coef·x^power.
struct Monomial {
  double coef;
  double power;
};

using SeriesTerm = std::variant<GridFunction, Monomial>;

/// u(x) = u0 + Σ terms, with |u − (u0 + Σ terms)| ≤ tail_bound on [0,T].
class SeriesSolution {
 public:
  SeriesSolution(const FracOrder& order, double u0, std::vector<SeriesTerm> terms, int depth,
                 double tail_bound, double domain_end);

  const FracOrder& order() const noexcept { return order_; }
  double u0() const noexcept { return u0_; }
  const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
  int depth() const noexcept { return depth_; }
  double tail_bound() const noexcept { return tail_bound_; }
  double domain_end() const noexcept { return domain_end_; }

  /// Exactly u0 at x = 0.
  double operator()(double x) const;
  double derivative(double x) const;
  /// Grid values of u (origin u0) when the grid terms share one grid.
  const std::optional<GridFunction>& grid_values() const noexcept { return grid_sum_; }
  SmoothFn as_smooth_fn() const;

  /// Series cut after the first `n_terms` terms (tail bound not recomputed: set to NaN).
  SeriesSolution truncated(std::size_t n_terms) const;

 private:
  FracOrder order_;
  double u0_;
  std::vector<SeriesTerm> terms_;
  int depth_;
  double tail_bound_;
  double domain_end_;
  std::optional<GridFunction> grid_sum_;
  std::vector<Monomial> monomials_;
};

/// Strong solution of D^β u = g, u(0) = u0 on [0,T], as u0 + Σ_{j≥0} K^j J^β g.
SeriesSolution solve_linear(const Forcing& g, double u0, const FracOrder& order, double T,
                            double tol, int grid_order = GridFunction::kDefaultOrder);

/// D^β u = λu, u(0) = u0: u0(1 + Σ_N (λΓ(1−β)x^β)^N P_N).
SeriesSolution solve_eigen(double lambda, double u0, const FracOrder& order, double T, double tol);

/// Largest T for which the λ < 0 kernels stay nonnegative: (−λΓ(1−β))^{−1/β}.
double affine_validity_end(double lambda, const FracOrder& order);

/// D^β u = λu + g with λ < 0 on [0,T], T ≤ affine_validity_end(λ).
SeriesSolution solve_affine_negative(double lambda, const Forcing& g, double u0,
                                     const FracOrder& order, double T, double tol,
                                     int grid_order = GridFunction::kDefaultOrder);

/// D^β u = f(x,u), u(0) = u0, with |f| ≤ sup_M and f L-Lipschitz in y on the band |y − u0| ≤ Y.
struct NonlinearSpec {
  std::function<double(double, double)> f;
  double lipschitz_L;
  double band_Y;
  double sup_M;
  double u0;

  void validate() const;
};

/// T₁ = min{T, (Y/M)^{1/β} [Γ(1+β) − 1/Γ(1−β)]^{1/β}}.
double horizon_T1(const NonlinearSpec& spec, const FracOrder& order, double T);

struct NonlinearResult {
  SeriesSolution solution;
  int iterations;
  double horizon;
  /// Sup distance between successive iterates.
  std::vector<double> steps;
};

/// Picard iteration φ ↦ u0 + Σ_{j≥1} K^j[Γ(1−β)x^β f(x,φ)] on [0,T₁].
NonlinearResult solve_nonlinear(const NonlinearSpec& spec, const FracOrder& order, double T,
                                double tol, int max_iters,
                                int grid_order = GridFunction::kDefaultOrder);

/// g0 Γ(1−β) sin(βπ)/(βπ − sin βπ).
double holder_limit(double g0, const FracOrder& order);

/// Relative deviation of (u(x)−u0)/x^β at x = 1e-3·T from holder_limit(g(0)).
/// Absolute deviation when g(0) = 0.
double holder_limit_check(const SeriesSolution& solution, const Forcing& g);

}  // namespace cenfrac
