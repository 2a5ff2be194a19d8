#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "cenfrac/errors.hpp"

namespace cenfrac::quad {

/// Nodes and weights of a quadrature rule.
template <typename Scalar>
struct Rule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  Eigen::Index size() const { return nodes.size(); }

  template <typename F>
  Scalar integrate(F&& f) const {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights(i) * f(nodes(i));
    return sum;
  }
};

using RuleD = Rule<double>;

/// Gauss-Jacobi rule on [-1,1] for the weight (1−x)^a (1+x)^b, a, b > −1.
///
/// Golub-Welsch on the monic Jacobi recurrence gives starting nodes; each node
/// is then polished by Newton on the recurrence and the weight taken from the
/// Christoffel formula w_i = μ0 β_1⋯β_{n−1} / (p_n'(x_i) p_{n−1}(x_i)), which
/// keeps small endpoint weights relatively accurate.
template <typename Scalar>
Rule<Scalar> gauss_jacobi(int n, Scalar a, Scalar b) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (n < 1) throw DomainError("gauss_jacobi: n must be >= 1");
  if (!(a > Scalar(-1)) || !(b > Scalar(-1))) {
    throw DomainError("gauss_jacobi: exponents must exceed -1");
  }
  const Scalar ab = a + b;
  Vec alpha(n), beta(n);
  alpha(0) = (b - a) / (ab + Scalar(2));
  beta(0) = Scalar(0);
  for (int k = 1; k < n; ++k) {
    const Scalar s = Scalar(2 * k) + ab;
    alpha(k) = (b * b - a * a) / (s * (s + Scalar(2)));
    if (k == 1) {
      beta(k) = Scalar(4) * (Scalar(1) + a) * (Scalar(1) + b) /
                ((ab + Scalar(2)) * (ab + Scalar(2)) * (ab + Scalar(3)));
    } else {
      beta(k) = Scalar(4) * Scalar(k) * (Scalar(k) + a) * (Scalar(k) + b) * (Scalar(k) + ab) /
                (s * s * (s + Scalar(1)) * (s - Scalar(1)));
    }
  }
  using std::lgamma;
  using std::exp;
  using std::log;
  using std::sqrt;
  using std::abs;
  const Scalar mu0 = exp((ab + Scalar(1)) * log(Scalar(2)) + lgamma(a + Scalar(1)) +
                         lgamma(b + Scalar(1)) - lgamma(ab + Scalar(2)));

  Mat jacobi = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = alpha(k);
    if (k + 1 < n) {
      jacobi(k, k + 1) = sqrt(beta(k + 1));
      jacobi(k + 1, k) = jacobi(k, k + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi, Eigen::EigenvaluesOnly);
  Vec x = solver.eigenvalues();

  // p_n, p_n' and p_{n-1} of the monic family at t.
  auto evaluate = [&](Scalar t, Scalar& pn, Scalar& dpn, Scalar& pnm1) {
    Scalar p_prev(0), p(1), dp_prev(0), dp(0);
    for (int k = 0; k < n; ++k) {
      const Scalar p_next = (t - alpha(k)) * p - beta(k) * p_prev;
      const Scalar dp_next = p + (t - alpha(k)) * dp - beta(k) * dp_prev;
      p_prev = p;
      p = p_next;
      dp_prev = dp;
      dp = dp_next;
    }
    pn = p;
    dpn = dp;
    pnm1 = p_prev;
  };

  Scalar norm(mu0);
  for (int k = 1; k < n; ++k) norm *= beta(k);

  Rule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    Scalar t = x(i), pn, dpn, pnm1;
    for (int it = 0; it < 8; ++it) {
      evaluate(t, pn, dpn, pnm1);
      const Scalar step = pn / dpn;
      t -= step;
      if (abs(step) <= Scalar(4) * Eigen::NumTraits<Scalar>::epsilon() * abs(t)) break;
    }
    evaluate(t, pn, dpn, pnm1);
    rule.nodes(i) = t;
    rule.weights(i) = norm / (dpn * pnm1);
  }
  return rule;
}

template <typename Scalar>
Rule<Scalar> gauss_legendre(int n) {
  return gauss_jacobi<Scalar>(n, Scalar(0), Scalar(0));
}

/// Affine map of a [-1,1] rule onto [lo, hi] (weights scaled by the Jacobian only).
template <typename Scalar>
Rule<Scalar> mapped(const Rule<Scalar>& ref, Scalar lo, Scalar hi) {
  Rule<Scalar> out;
  const Scalar half = (hi - lo) / Scalar(2);
  out.nodes = (ref.nodes.array() + Scalar(1)) * half + lo;
  out.weights = ref.weights * half;
  return out;
}

/// Composite rule for ∫₀¹ t^c (1−t)^d F(t) dt (c, d > −1). The weight is folded
/// into the returned weights. F may carry power-type cusps at t = 0: the rule
/// uses a Gauss-Jacobi panel on [1/2, 1] for the (1−t)^d factor, Gauss-Legendre
/// panels on [h_{k+1}, h_k] with h_k = ratio^k/2, and a Gauss-Jacobi panel with
/// weight t^c on [0, floor]. Rules are cached; the returned object is shared.
std::shared_ptr<const RuleD> singular_unit_rule(double c, double d, int order = 32);

/// Cached Gauss-Legendre rule on [-1,1].
std::shared_ptr<const RuleD> legendre_rule(int order);

/// Gauss-Legendre panels on [lo, hi] graded geometrically toward both ends.
/// Panels stop shrinking once narrower than floor_lo (resp. floor_hi).
RuleD two_sided_graded_rule(double lo, double hi, double floor_lo, double floor_hi,
                            int order = 32, double ratio = 0.1);

}  // namespace cenfrac::quad
