#pragma once

#include <vector>

namespace cenfrac {

/// Gamma function for positive arguments (Lanczos, g = 7, 9 coefficients).
/// Throws DomainError for z <= 0.
double gamma(double z);

/// log Γ(z) for z > 0; stays finite where gamma() overflows.
double log_gamma(double z);

/// Γ(a)/Γ(b) for a, b > 0 without intermediate overflow.
double gamma_ratio(double a, double b);

/// Fractional order β ∈ (0,1) with the constants every operator needs.
class FracOrder {
 public:
  explicit FracOrder(double beta);

  double beta() const noexcept { return beta_; }
  double gamma_1mb() const noexcept { return gamma_1mb_; }  // Γ(1−β)
  double gamma_1pb() const noexcept { return gamma_1pb_; }  // Γ(1+β)
  double reflection() const noexcept { return reflection_; }  // βπ/sin(βπ)
  double gamma_b() const noexcept { return gamma_1pb_ / beta_; }  // Γ(β)
  /// |Γ(−β)| = Γ(1−β)/β.
  double abs_gamma_neg() const noexcept { return gamma_1mb_ / beta_; }

 private:
  double beta_;
  double gamma_1mb_;
  double gamma_1pb_;
  double reflection_;
};

/// ρ(α,β) = Γ(α+1−β) / (Γ(1+α) Γ(1−β)): the factor by which K scales x^α.
double rho(double alpha, const FracOrder& order);

/// C_{α,β} = 1 − ρ(α,β), the ratio between the censored and the R-L derivative on x^α.
double c_coeff(double alpha, const FracOrder& order);

/// n-th factor of the eigen-series product, Γ(1+nβ)Γ(1−β)/Γ(nβ+1−β) − 1 = 1/ρ(nβ,β) − 1.
double ml_product_factor(int n, const FracOrder& order);

/// P_N = ∏_{n=1}^N ml_product_factor(n)^{-1}, via the running recurrence.
double ml_product(int N, const FracOrder& order);

/// log P_N; finite even when P_N underflows.
double log_ml_product(int N, const FracOrder& order);

/// P_1 … P_N in one pass (index 0 holds P_0 = 1).
std::vector<double> ml_products(int N, const FracOrder& order);

/// Heuristic constant C_β = max_{N ≤ 100} P_N / (2^N (N! β^N)^{−β}).
/// Only used to size truncations; no correctness claim rests on it.
double ml_product_constant(const FracOrder& order);

/// log of the bound C_β 2^N (N! β^N)^{−β} without C_β.
double log_product_envelope(int N, const FracOrder& order);

}  // namespace cenfrac
