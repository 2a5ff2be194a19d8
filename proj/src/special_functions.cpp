#include "cenfrac/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cenfrac/errors.hpp"

namespace cenfrac {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A(z) for Γ(z+1).
double lanczos_sum(double z) {
  double sum = kLanczosCoeff[0];
  for (std::size_t k = 1; k < kLanczosCoeff.size(); ++k) {
    sum += kLanczosCoeff[k] / (z + static_cast<double>(k));
  }
  return sum;
}

// Γ(z+1) for z >= 0.
double gamma_shifted(double z) {
  const double t = z + kLanczosG + 0.5;
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * std::exp(-t) * half_power *
         lanczos_sum(z);
}

double log_gamma_shifted(double z) {
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

void require_positive(double z, const char* what) {
  if (!(z > 0.0)) {
    throw DomainError(std::string(what) + ": argument must be positive, got " +
                      std::to_string(z));
  }
}

}  // namespace

double gamma(double z) {
  require_positive(z, "gamma");
  if (z < 1.0) return gamma_shifted(z) / z;
  return gamma_shifted(z - 1.0);
}

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  if (z < 1.0) return log_gamma_shifted(z) - std::log(z);
  return log_gamma_shifted(z - 1.0);
}

double gamma_ratio(double a, double b) {
  require_positive(a, "gamma_ratio");
  require_positive(b, "gamma_ratio");
  if (a < 150.0 && b < 150.0) return gamma(a) / gamma(b);
  return std::exp(log_gamma(a) - log_gamma(b));
}

FracOrder::FracOrder(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("fractional order must lie in (0,1), got " + std::to_string(beta));
  }
  gamma_1mb_ = gamma(1.0 - beta);
  gamma_1pb_ = gamma(1.0 + beta);
  reflection_ = beta * std::numbers::pi / std::sin(beta * std::numbers::pi);
  const double rel = std::abs(gamma_1pb_ * gamma_1mb_ - reflection_) / reflection_;
  if (rel > 1e-12) {
    throw ContractError("FracOrder self-check failed: Γ(1+β)Γ(1−β) differs from βπ/sin(βπ) by " +
                        std::to_string(rel));
  }
}

double rho(double alpha, const FracOrder& order) {
  if (!(alpha >= 0.0)) {
    throw DomainError("rho: alpha must be non-negative, got " + std::to_string(alpha));
  }
  if (alpha == 0.0) return 1.0;
  return gamma_ratio(alpha + 1.0 - order.beta(), 1.0 + alpha) / order.gamma_1mb();
}

double c_coeff(double alpha, const FracOrder& order) {
  if (!(alpha > 0.0)) {
    throw DomainError("c_coeff: alpha must be positive, got " + std::to_string(alpha));
  }
  return 1.0 - rho(alpha, order);
}

double ml_product_factor(int n, const FracOrder& order) {
  const double nb = n * order.beta();
  return gamma_ratio(1.0 + nb, nb + 1.0 - order.beta()) * order.gamma_1mb() - 1.0;
}

namespace {

// Running recurrence P_N = P_{N-1} / factor_N. Switches to log space once the
// partial product leaves [1e-300, 1e300].
struct ProductRecurrence {
  double value = 1.0;
  double log_value = 0.0;
  bool in_log = false;

  void step(double factor) {
    if (in_log) {
      log_value -= std::log(factor);
      return;
    }
    value /= factor;
    if (value < 1e-300 || value > 1e300) {
      in_log = true;
      log_value = std::log(value);
    }
  }
  double get() const { return in_log ? std::exp(log_value) : value; }
  double get_log() const { return in_log ? log_value : std::log(value); }
};

void require_positive_index(int N) {
  if (N < 1) throw DomainError("ml_product: N must be >= 1, got " + std::to_string(N));
}

}  // namespace

double ml_product(int N, const FracOrder& order) {
  require_positive_index(N);
  ProductRecurrence p;
  for (int n = 1; n <= N; ++n) p.step(ml_product_factor(n, order));
  return p.get();
}

double log_ml_product(int N, const FracOrder& order) {
  require_positive_index(N);
  ProductRecurrence p;
  for (int n = 1; n <= N; ++n) p.step(ml_product_factor(n, order));
  return p.get_log();
}

std::vector<double> ml_products(int N, const FracOrder& order) {
  std::vector<double> out(static_cast<std::size_t>(std::max(N, 0)) + 1);
  out[0] = 1.0;
  ProductRecurrence p;
  for (int n = 1; n <= N; ++n) {
    p.step(ml_product_factor(n, order));
    out[static_cast<std::size_t>(n)] = p.get();
  }
  return out;
}

double log_product_envelope(int N, const FracOrder& order) {
  const double b = order.beta();
  return N * std::log(2.0) - b * (log_gamma(N + 1.0) + N * std::log(b));
}

double ml_product_constant(const FracOrder& order) {
  double best = -INFINITY;
  ProductRecurrence p;
  for (int N = 1; N <= 100; ++N) {
    p.step(ml_product_factor(N, order));
    best = std::max(best, p.get_log() - log_product_envelope(N, order));
  }
  return std::exp(best);
}

}  // namespace cenfrac
