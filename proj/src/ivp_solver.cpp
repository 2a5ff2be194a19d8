#include "cenfrac/ivp_solver.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "cenfrac/errors.hpp"
#include "cenfrac/kernels.hpp"

namespace cenfrac {

// --------------------------------------------------------- SeriesSolution

SeriesSolution::SeriesSolution(const FracOrder& order, double u0, std::vector<SeriesTerm> terms,
                               int depth, double tail_bound, double domain_end)
    : order_(order), u0_(u0), terms_(std::move(terms)), depth_(depth), tail_bound_(tail_bound),
      domain_end_(domain_end) {
  if (!(domain_end_ > 0.0)) throw DomainError("series solution: domain end must be positive");
  const GridSpec* grid = nullptr;
  Eigen::VectorXd sum;
  for (const auto& term : terms_) {
    if (const auto* m = std::get_if<Monomial>(&term)) {
      monomials_.push_back(*m);
      continue;
    }
    const auto& gf = std::get<GridFunction>(term);
    if (!grid) {
      grid = &gf.grid();
      sum = gf.full_values();
    } else {
      if (!(gf.grid() == *grid)) throw ContractError("series solution: grid terms must share one grid");
      sum += gf.full_values();
    }
  }
  if (grid) {
    sum(0) += u0_;
    sum.tail(sum.size() - 1).array() += u0_;
    grid_sum_ = GridFunction::on_grid(*grid, std::move(sum));
  }
}

double SeriesSolution::operator()(double x) const {
  if (!(x >= 0.0) || x > domain_end_ * (1.0 + 1e-14)) {
    throw DomainError("series solution: evaluation point outside [0,T]");
  }
  if (x == 0.0) return u0_;
  double v = grid_sum_ ? (*grid_sum_)(x) : u0_;
  for (const auto& m : monomials_) v += m.coef * std::pow(x, m.power);
  return v;
}

double SeriesSolution::derivative(double x) const {
  if (!(x > 0.0) || x > domain_end_ * (1.0 + 1e-14)) {
    throw DomainError("series solution: derivative needs x in (0,T]");
  }
  double d = grid_sum_ ? grid_sum_->derivative(x) : 0.0;
  for (const auto& m : monomials_) d += m.coef * m.power * std::pow(x, m.power - 1.0);
  return d;
}

SmoothFn SeriesSolution::as_smooth_fn() const {
  auto self = std::make_shared<const SeriesSolution>(*this);
  const double T = domain_end_;
  return SmoothFn([self, T](double x) { return (*self)(std::min(x, T)); },
                  [self, T](double x) { return self->derivative(std::min(x, T)); }, T);
}

SeriesSolution SeriesSolution::truncated(std::size_t n_terms) const {
  std::vector<SeriesTerm> kept(terms_.begin(),
                               terms_.begin() + static_cast<std::ptrdiff_t>(std::min(n_terms, terms_.size())));
  const int depth = static_cast<int>(kept.size());
  return SeriesSolution(order_, u0_, std::move(kept), depth,
                        std::numeric_limits<double>::quiet_NaN(), domain_end_);
}

// ----------------------------------------------------------------- linear

namespace {

void check_common(double T, double tol) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("solver: T must be positive and finite");
  if (!(tol > 0.0)) throw DomainError("solver: tol must be positive");
}

}  // namespace

SeriesSolution solve_linear(const Forcing& g, double u0, const FracOrder& order, double T,
                            double tol, int grid_order) {
  check_common(T, tol);
  const Envelope env = g.certified(order);
  const double M = order.gamma_1mb() * env.M;  // envelope of ψ = Γ(1−β) x^β g
  const double alpha = env.alpha;

  if (g.is_zero()) return SeriesSolution(order, u0, {}, 1, 0.0, T);

  const GridSpec grid(T, cusp_exponent(Envelope{M, alpha}), grid_order);
  Eigen::VectorXd term(grid_order + 1);
  term(0) = 0.0;
  for (int k = 1; k <= grid_order; ++k) term(k) = rl_integral(g, order, grid.x_nodes()(k));

  const auto K = k_matrix(grid, order);
  std::vector<SeriesTerm> terms;
  int depth = 0;
  double tail = 0.0;
  while (true) {
    ++depth;
    terms.emplace_back(GridFunction::on_grid(grid, term));
    tail = neumann_tail(M, T, alpha, depth, order);
    if (tail < tol) break;
    if (term.cwiseAbs().maxCoeff() == 0.0) {
      tail = 0.0;
      break;
    }
    if (depth > 1000000) throw NonConvergenceError("solve_linear: depth cap reached");
    term = (*K) * term;
  }
  return SeriesSolution(order, u0, std::move(terms), depth, tail, T);
}

// ------------------------------------------------------------------ eigen

SeriesSolution solve_eigen(double lambda, double u0, const FracOrder& order, double T, double tol) {
  check_common(T, tol);
  if (!std::isfinite(lambda) || !std::isfinite(u0)) throw DomainError("solve_eigen: non-finite input");
  if (lambda == 0.0 || u0 == 0.0) return SeriesSolution(order, u0, {}, 0, 0.0, T);

  const double b = order.beta();
  const double lam_g = lambda * order.gamma_1mb();
  const double q = std::abs(lam_g) * std::pow(T, b);
  const double log_q = std::log(q);
  const double log_c = std::log(ml_product_constant(order));
  const double log_u0 = std::log(std::abs(u0));

  std::vector<SeriesTerm> terms;
  double log_p = 0.0;  // log P_N
  double tail = 0.0;
  for (int N = 1;; ++N) {
    log_p -= std::log(ml_product_factor(N, order));
    const double sign = (u0 < 0.0 ? -1.0 : 1.0) * ((lam_g < 0.0 && N % 2 == 1) ? -1.0 : 1.0);
    terms.emplace_back(Monomial{sign * std::exp(log_u0 + N * std::log(std::abs(lam_g)) + log_p),
                                N * b});
    // Ratios of consecutive terms at x = T decrease in N.
    const double ratio = q / ml_product_factor(N + 1, order);
    const double log_t = log_u0 + N * log_q + log_p;
    if (ratio < 1.0) {
      tail = std::exp(log_t) * ratio / (1.0 - ratio);
      double heuristic = 0.0;
      for (int k = N + 1; k <= N + 50; ++k) {
        heuristic += std::exp(log_u0 + k * log_q + log_c + log_product_envelope(k, order));
      }
      if (tail < tol && heuristic < tol) return SeriesSolution(order, u0, std::move(terms), N, tail, T);
    }
    if (N > 100000) throw NonConvergenceError("solve_eigen: depth cap reached");
  }
}

// ----------------------------------------------------------------- affine

double affine_validity_end(double lambda, const FracOrder& order) {
  if (!(lambda < 0.0)) throw DomainError("affine_validity_end: lambda must be negative");
  return std::pow(-lambda * order.gamma_1mb(), -1.0 / order.beta());
}

SeriesSolution solve_affine_negative(double lambda, const Forcing& g, double u0,
                                     const FracOrder& order, double T, double tol, int grid_order) {
  check_common(T, tol);
  const double t_max = affine_validity_end(lambda, order);
  if (T > t_max * (1.0 + 1e-12)) {
    throw DomainError("solve_affine_negative: T exceeds the maximal valid end " +
                      std::to_string(t_max));
  }
  const double b = order.beta();
  const Envelope env = g.certified(order);
  // |x^β (g + λu0)| ≤ M' x^{α'} with α' = min(α, β).
  const double alpha = std::min(env.alpha, b);
  const double M = order.gamma_1mb() * (env.M * std::pow(T, env.alpha - alpha) +
                                        std::abs(lambda * u0) * std::pow(T, b - alpha));
  if (M == 0.0) return SeriesSolution(order, u0, {}, 1, 0.0, T);

  const GridSpec grid(T, cusp_exponent(Envelope{M, alpha}), grid_order);
  Eigen::VectorXd term(grid_order + 1);
  term(0) = 0.0;
  for (int k = 1; k <= grid_order; ++k) {
    const double x = grid.x_nodes()(k);
    term(k) = (g.is_zero() ? 0.0 : rl_integral(g, order, x)) +
              lambda * u0 * std::pow(x, b) / order.gamma_1pb();
  }
  const Eigen::MatrixXd K = *k_matrix(grid, order) + lambda * *rl_matrix(grid, order);

  std::vector<SeriesTerm> terms;
  int depth = 0;
  double tail = 0.0;
  while (true) {
    ++depth;
    terms.emplace_back(GridFunction::on_grid(grid, term));
    tail = neumann_tail(M, T, alpha, depth, order);
    if (tail < tol) break;
    if (term.cwiseAbs().maxCoeff() == 0.0) {
      tail = 0.0;
      break;
    }
    if (depth > 1000000) throw NonConvergenceError("solve_affine_negative: depth cap reached");
    term = K * term;
  }
  return SeriesSolution(order, u0, std::move(terms), depth, tail, T);
}

// -------------------------------------------------------------- nonlinear

void NonlinearSpec::validate() const {
  if (!f) throw UsageError("nonlinear spec: f is missing");
  if (!(lipschitz_L > 0.0) || !(band_Y > 0.0) || !(sup_M > 0.0)) {
    throw DomainError("nonlinear spec: L, Y and M must be positive");
  }
  if (!std::isfinite(u0)) throw DomainError("nonlinear spec: u0 must be finite");
}

double horizon_T1(const NonlinearSpec& spec, const FracOrder& order, double T) {
  spec.validate();
  if (!(T > 0.0)) throw DomainError("horizon_T1: T must be positive");
  const double b = order.beta();
  const double gap = order.gamma_1pb() - 1.0 / order.gamma_1mb();
  const double t1 = std::pow(spec.band_Y / spec.sup_M, 1.0 / b) * std::pow(gap, 1.0 / b);
  return std::min(T, t1);
}

NonlinearResult solve_nonlinear(const NonlinearSpec& spec, const FracOrder& order, double T,
                                double tol, int max_iters, int grid_order) {
  check_common(T, tol);
  if (max_iters < 1) throw DomainError("solve_nonlinear: max_iters must be >= 1");
  const double T1 = horizon_T1(spec, order, T);
  const double b = order.beta();
  const GridSpec grid(T1, b, grid_order);
  const Eigen::VectorXd& x = grid.x_nodes();
  const Envelope psi_env{order.gamma_1mb() * spec.sup_M, b};

  auto picard = [&](const Eigen::VectorXd& phi) {
    Eigen::VectorXd psi(grid_order + 1);
    psi(0) = 0.0;
    for (int k = 1; k <= grid_order; ++k) {
      psi(k) = order.gamma_1mb() * std::pow(x(k), b) * spec.f(x(k), phi(k));
    }
    GridFunction psi_fn = [&] {
      try {
        return GridFunction::on_grid(grid, psi, psi_env);
      } catch (const ContractError&) {
        throw ContractError("solve_nonlinear: |f| exceeds the declared sup M on the band");
      }
    }();
    Eigen::VectorXd next = neumann_sum(psi_fn, order, 0.1 * tol).sum.full_values();
    next.array() += spec.u0;
    if ((next.array() - spec.u0).abs().maxCoeff() > spec.band_Y * (1.0 + 1e-12)) {
      throw ContractError("solve_nonlinear: iterate left the band |y - u0| <= Y");
    }
    return next;
  };

  NonlinearResult result{SeriesSolution(order, spec.u0, {}, 0, 0.0, T1), 0, T1, {}};
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(grid_order + 1, spec.u0);
  bool pending_confirmation = false;
  for (int it = 1; it <= max_iters + 1; ++it) {
    Eigen::VectorXd next = picard(phi);
    const double step = (next - phi).cwiseAbs().maxCoeff();
    result.steps.push_back(step);
    phi = std::move(next);
    if (step < tol) {
      if (pending_confirmation) {
        Eigen::VectorXd values = phi;
        values.array() -= spec.u0;
        std::vector<SeriesTerm> terms{GridFunction::on_grid(grid, values)};
        result.solution = SeriesSolution(order, spec.u0, std::move(terms), 1, step, T1);
        return result;
      }
      pending_confirmation = true;
      result.iterations = it;
    } else {
      pending_confirmation = false;
      if (it >= max_iters) break;
    }
  }
  throw NonConvergenceError("solve_nonlinear: no fixed point within " + std::to_string(max_iters) +
                            " iterations");
}

// ----------------------------------------------------------------- Hölder

double holder_limit(double g0, const FracOrder& order) {
  const double bp = order.beta() * std::numbers::pi;
  return g0 * order.gamma_1mb() * std::sin(bp) / (bp - std::sin(bp));
}

double holder_limit_check(const SeriesSolution& solution, const Forcing& g) {
  if (!g.value_at_zero) throw UsageError("holder_limit_check: forcing has no value at 0");
  const double x = 1e-3 * solution.domain_end();
  const double quotient = (solution(x) - solution.u0()) / std::pow(x, solution.order().beta());
  const double target = holder_limit(*g.value_at_zero, solution.order());
  if (target == 0.0) return std::abs(quotient);
  return std::abs(quotient - target) / std::abs(target);
}

}  // namespace cenfrac
