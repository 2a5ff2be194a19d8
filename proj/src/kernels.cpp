#include "cenfrac/kernels.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "cenfrac/errors.hpp"
#include "cenfrac/parallel.hpp"
#include "cenfrac/quadrature.hpp"

namespace cenfrac {

double k1_density(double x, double r, const FracOrder& order) {
  if (!(x > 0.0)) throw DomainError("k1_density: x must be positive");
  if (!(r > 0.0) || !(r < x)) throw DomainError("k1_density: r must lie in the open interval (0,x)");
  const double b = order.beta();
  return std::pow(x - r, b - 1.0) * std::pow(r, -b) / (order.gamma_b() * order.gamma_1mb());
}

double kernel_moment(int j, double x, double alpha, const FracOrder& order) {
  if (j < 1) throw DomainError("kernel_moment: j must be >= 1");
  if (!(x > 0.0)) throw DomainError("kernel_moment: x must be positive");
  if (!(alpha >= 0.0)) throw DomainError("kernel_moment: alpha must be >= 0");
  return std::pow(x, alpha) * std::pow(rho(alpha, order), j);
}

KernelEval::KernelEval(int j_, double x_, int q) : j(j_), x(x_), quadrature_order(q) {
  if (j < 1) throw DomainError("KernelEval: j must be >= 1");
  if (!(x > 0.0)) throw DomainError("KernelEval: x must be positive");
  if (q < 4) throw DomainError("KernelEval: quadrature order must be >= 4");
}

namespace {

// k_j(x,r) without argument checks; near the diagonal k_j ~ (x−r)^{jβ−1}.
double kernel_point(int j, double x, double r, const FracOrder& order, KernelOrdering ordering,
                    int q) {
  const double b = order.beta();
  if (j == 1) {
    return std::pow(x - r, b - 1.0) * std::pow(r, -b) / (order.gamma_b() * order.gamma_1mb());
  }
  // Exponents of the two factors at s = x and s = r.
  const double ex = ordering == KernelOrdering::outer ? b - 1.0 : (j - 1) * b - 1.0;
  const double er = ordering == KernelOrdering::outer ? (j - 1) * b - 1.0 : b - 1.0;
  const quad::RuleD gj = quad::gauss_jacobi<double>(q, ex, er);
  const double half = 0.5 * (x - r);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < gj.size(); ++i) {
    const double s = r + half * (gj.nodes(i) + 1.0);
    const double dx = half * (1.0 - gj.nodes(i));
    const double dr = half * (1.0 + gj.nodes(i));
    double f;
    if (ordering == KernelOrdering::outer) {
      f = kernel_point(1, x, s, order, ordering, q) * kernel_point(j - 1, s, r, order, ordering, q);
    } else {
      f = kernel_point(j - 1, x, s, order, ordering, q) * kernel_point(1, s, r, order, ordering, q);
    }
    // Divide out the weight (1−ξ)^{ex}(1+ξ)^{er} in the s variable.
    sum += gj.weights(i) * f / (std::pow(dx, ex) * std::pow(dr, er));
  }
  return sum * half * std::pow(half, ex + er);
}

enum class MatrixKind { k, rl };

// (T, a, order, β, kind, quad order)
using MatrixKey = std::tuple<double, double, int, double, int, int>;

Eigen::MatrixXd build_matrix(const GridSpec& grid, const FracOrder& order, MatrixKind kind,
                             int quad_order) {
  const double b = order.beta();
  const int n = grid.order();
  const double a = grid.cusp_exponent();
  const auto rule = kind == MatrixKind::k ? quad::singular_unit_rule(-b, b - 1.0, quad_order)
                                          : quad::singular_unit_rule(0.0, b - 1.0, quad_order);
  Eigen::VectorXd ta(rule->size());
  for (Eigen::Index q = 0; q < rule->size(); ++q) ta(q) = std::pow(rule->nodes(q), a);

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  if (kind == MatrixKind::k) m(0, 0) = 1.0;  // Kψ(0) = ψ(0)
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const int k = static_cast<int>(idx) + 1;
    const double wk = grid.w_nodes()(k);
    Eigen::VectorXd basis(n + 1);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    for (Eigen::Index q = 0; q < rule->size(); ++q) {
      barycentric_basis<double>(grid.w_nodes(), grid.bary_weights(), wk * ta(q), basis);
      row += rule->weights(q) * basis;
    }
    const double scale = kind == MatrixKind::k
                             ? 1.0 / (order.gamma_b() * order.gamma_1mb())
                             : std::pow(grid.x_nodes()(k), b) / order.gamma_b();
    m.row(k) = (scale * row).transpose();
  });
  return m;
}

std::shared_ptr<const Eigen::MatrixXd> cached_matrix(const GridSpec& grid, const FracOrder& order,
                                                     MatrixKind kind, int quad_order) {
  static std::mutex mutex;
  static std::map<MatrixKey, std::shared_ptr<const Eigen::MatrixXd>> cache;
  const MatrixKey key{grid.domain_end(), grid.cusp_exponent(), grid.order(), order.beta(),
                      static_cast<int>(kind), quad_order};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto m = std::make_shared<const Eigen::MatrixXd>(build_matrix(grid, order, kind, quad_order));
  std::lock_guard lock(mutex);
  if (cache.size() > 256) cache.clear();
  return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace

double KernelEval::operator()(double r, const FracOrder& order, KernelOrdering ordering) const {
  if (!(r > 0.0) || !(r < x)) throw DomainError("KernelEval: r must lie in the open interval (0,x)");
  return kernel_point(j, x, r, order, ordering, quadrature_order);
}

std::shared_ptr<const Eigen::MatrixXd> k_matrix(const GridSpec& grid, const FracOrder& order,
                                                 int quad_order) {
  return cached_matrix(grid, order, MatrixKind::k, quad_order);
}

std::shared_ptr<const Eigen::MatrixXd> rl_matrix(const GridSpec& grid, const FracOrder& order,
                                                  int quad_order) {
  return cached_matrix(grid, order, MatrixKind::rl, quad_order);
}

GridFunction apply_K(const GridFunction& psi, const FracOrder& order) {
  const GridSpec& grid = psi.grid();
  const auto m = k_matrix(grid, order);
  Eigen::VectorXd out = (*m) * psi.full_values();
  std::optional<Envelope> env;
  if (psi.envelope()) {
    env = Envelope{psi.envelope()->M * rho(psi.envelope()->alpha, order), psi.envelope()->alpha};
  }
  return GridFunction::on_grid(grid, std::move(out), env);
}

GridFunction apply_J(const GridFunction& phi, const FracOrder& order) {
  const GridSpec& grid = phi.grid();
  const auto m = rl_matrix(grid, order);
  return GridFunction::on_grid(grid, (*m) * phi.full_values());
}

double neumann_tail(double M, double T, double alpha, int depth, const FracOrder& order) {
  const double r = rho(alpha, order);
  return M * std::pow(T, alpha) * std::pow(r, depth + 1) / (1.0 - r);
}

NeumannResult neumann_sum(const GridFunction& psi, const FracOrder& order, double tol,
                          int max_depth) {
  if (!(tol > 0.0)) throw DomainError("neumann_sum: tol must be positive");
  if (!psi.envelope() || !(psi.envelope()->alpha > 0.0)) {
    throw DivergenceError(
        "neumann_sum: the envelope exponent alpha must be strictly positive; with alpha = 0 "
        "the series need not converge");
  }
  const auto [M, alpha] = *psi.envelope();
  const GridSpec& grid = psi.grid();
  const double T = psi.domain_end();
  const double r = rho(alpha, order);
  const auto m = k_matrix(grid, order);

  Eigen::VectorXd term = psi.full_values();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(term.size());
  int depth = 0;
  double tail = 0.0;
  while (true) {
    term = (*m) * term;
    sum += term;
    ++depth;
    tail = neumann_tail(M, T, alpha, depth, order);
    if (tail < tol || term.cwiseAbs().maxCoeff() == 0.0) break;
    if (depth >= max_depth) {
      throw NonConvergenceError("neumann_sum: tail bound still above tol at the depth cap");
    }
  }
  if (term.cwiseAbs().maxCoeff() == 0.0) tail = 0.0;
  return {GridFunction::on_grid(grid, std::move(sum), Envelope{M * r / (1.0 - r), alpha}), depth,
          tail};
}

}  // namespace cenfrac
