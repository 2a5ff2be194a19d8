#pragma once

#include <Eigen/Dense>
#include <memory>

#include "cenfrac/grid_function.hpp"
#include "cenfrac/special_functions.hpp"

namespace cenfrac {

/// k₁(x,r) = (x−r)^{β−1} r^{−β} / (Γ(β)Γ(1−β)), the Beta(1−β,β) density on (0,x).
/// Throws DomainError unless 0 < r < x.
double k1_density(double x, double r, const FracOrder& order);

/// ∫₀^x r^α k_j(x,r) dr = x^α ρ(α,β)^j.
double kernel_moment(int j, double x, double alpha, const FracOrder& order);

/// Which factor of the recursion for k_j carries k₁.
enum class KernelOrdering {
  outer,  // k_j(x,r) = ∫ k₁(x,s) k_{j−1}(s,r) ds
  inner,  // k_j(x,r) = ∫ k_{j−1}(x,s) k₁(s,r) ds
};

/// Point evaluation of k_j(x,·) by nested Gauss-Jacobi quadrature. Cost grows like
/// quadrature_order^{j−1}; meant for checks at small j.
struct KernelEval {
  int j;
  double x;
  int quadrature_order;

  KernelEval(int j, double x, int quadrature_order = 32);
  double operator()(double r, const FracOrder& order,
                    KernelOrdering ordering = KernelOrdering::outer) const;
};

/// Matrix of K on a grid: (Kψ)(x_k) = Σ_i K(k,i) ψ(x_i), with ψ interpolated
/// between nodes. Row and column 0 belong to the origin. Shared and cached.
std::shared_ptr<const Eigen::MatrixXd> k_matrix(const GridSpec& grid, const FracOrder& order,
                                                 int quad_order = 32);

/// Matrix of J^β on a grid, same conventions as k_matrix.
std::shared_ptr<const Eigen::MatrixXd> rl_matrix(const GridSpec& grid, const FracOrder& order,
                                                  int quad_order = 32);

/// (Kψ)(x) = ∫₀^x k₁(x,r) ψ(r) dr at every node of ψ's grid. An envelope (M,α)
/// becomes (Mρ(α,β), α).
GridFunction apply_K(const GridFunction& psi, const FracOrder& order);

/// J^β applied to the interpolant of φ, at every node. No envelope is propagated.
GridFunction apply_J(const GridFunction& phi, const FracOrder& order);

struct NeumannResult {
  GridFunction sum;
  int depth;
  double tail_bound;
};

/// Σ_{j=1}^J K^j ψ, with J the first depth at which M T^α ρ^{J+1}/(1−ρ) < tol.
/// Requires an envelope with α > 0; throws DivergenceError otherwise.
NeumannResult neumann_sum(const GridFunction& psi, const FracOrder& order, double tol,
                          int max_depth = 1000000);

/// Tail M T^α ρ^{J+1}/(1−ρ) of the Neumann sum after J terms.
double neumann_tail(double M, double T, double alpha, int depth, const FracOrder& order);

}  // namespace cenfrac
