#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

namespace cenfrac {

/// Growth certificate |ψ(x)| ≤ M x^α on (0,T].
struct Envelope {
  double M;
  double alpha;
};

/// Chebyshev-Gauss-Lobatto points on [lo, hi], ascending, n+1 of them.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> chebyshev_lobatto(int n, Scalar lo, Scalar hi) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pts(n + 1);
  using std::cos;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int k = 0; k <= n; ++k) {
    // Endpoints pinned exactly.
    const Scalar s = (k == 0) ? Scalar(-1) : (k == n) ? Scalar(1) : -cos(pi * Scalar(k) / Scalar(n));
    pts(k) = lo + (hi - lo) * (s + Scalar(1)) / Scalar(2);
  }
  return pts;
}

/// Barycentric weights of the Chebyshev-Lobatto points: (−1)^k, halved at the ends.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lobatto_barycentric_weights(int n) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lam(n + 1);
  for (int k = 0; k <= n; ++k) lam(k) = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
  lam(0) /= Scalar(2);
  lam(n) /= Scalar(2);
  return lam;
}

/// Lagrange basis values ℓ_i(t) for barycentric nodes/weights; exact at nodes.
template <typename Scalar, typename Out>
void barycentric_basis(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lam, Scalar t, Out&& out) {
  const Eigen::Index n = nodes.size();
  Scalar denom(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar diff = t - nodes(i);
    if (diff == Scalar(0)) {
      out.setZero();
      out(i) = Scalar(1);
      return;
    }
    out(i) = lam(i) / diff;
    denom += out(i);
  }
  out /= denom;
}

/// Interpolant value at t.
template <typename Scalar>
Scalar barycentric_eval(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes,
                        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lam,
                        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values, Scalar t) {
  Scalar num(0), den(0);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    const Scalar diff = t - nodes(i);
    if (diff == Scalar(0)) return values(i);
    const Scalar c = lam(i) / diff;
    num += c * values(i);
    den += c;
  }
  return num / den;
}

/// First derivative of the interpolant at t.
template <typename Scalar>
Scalar barycentric_derivative(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& nodes,
                              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lam,
                              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values, Scalar t) {
  const Eigen::Index n = nodes.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (t == nodes(j)) {
      Scalar d(0);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j) d += (lam(i) / lam(j)) * (values(i) - values(j)) / (nodes(j) - nodes(i));
      }
      return d;
    }
  }
  // p − v_j at the nearest node is summed without v_j's own term, otherwise the
  // cancellation is amplified by 1/(t − x_j) just off a node.
  using std::abs;
  Eigen::Index j = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (abs(t - nodes(i)) < abs(t - nodes(j))) j = i;
  }
  Scalar den(0), near_num(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar c = lam(i) / (t - nodes(i));
    den += c;
    if (i != j) near_num += c * (values(i) - values(j));
  }
  const Scalar dj = near_num / den;
  const Scalar p = values(j) + dj;
  Scalar num(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar c = lam(i) / (t - nodes(i));
    const Scalar d = (i == j) ? dj : p - values(i);
    num += c * d / (t - nodes(i));
  }
  return num / den;
}

/// Exponent a of the interpolation variable w = x^a. x^α is a polynomial of
/// degree ceil(α) in w; without an envelope a = 1.
double cusp_exponent(const std::optional<Envelope>& env);

/// Chebyshev-Lobatto grid on [0,T] in the variable w = x^a. Node 0 is the origin.
class GridSpec {
 public:
  GridSpec(double domain_end, double cusp_exponent, int order);

  double domain_end() const noexcept { return domain_end_; }
  double cusp_exponent() const noexcept { return a_; }
  int order() const noexcept { return order_; }
  /// w-coordinates including the origin (size order+1).
  const Eigen::VectorXd& w_nodes() const noexcept { return w_; }
  /// x-coordinates including the origin (size order+1).
  const Eigen::VectorXd& x_nodes() const noexcept { return x_; }
  const Eigen::VectorXd& bary_weights() const noexcept { return lam_; }
  double to_w(double x) const { return std::pow(x, a_); }

  bool operator==(const GridSpec& o) const {
    return domain_end_ == o.domain_end_ && a_ == o.a_ && order_ == o.order_;
  }

 private:
  double domain_end_;
  double a_;
  int order_;
  Eigen::VectorXd w_;
  Eigen::VectorXd x_;
  Eigen::VectorXd lam_;
};

/// Values of a function at nodes in (0,T], optionally with an interpolation
/// contract (Chebyshev grid in w = x^a) and an envelope certificate.
class GridFunction {
 public:
  static constexpr int kDefaultOrder = 32;

  /// Samples f on the Chebyshev grid chosen from the envelope. With an envelope the
  /// origin value is 0; otherwise it is `origin_value` or f(0).
  static GridFunction sample(const std::function<double(double)>& f, double domain_end,
                             std::optional<Envelope> env, int order = kDefaultOrder,
                             std::optional<double> origin_value = std::nullopt);

  /// Values on an existing grid: `full_values` has the origin at index 0.
  static GridFunction on_grid(const GridSpec& grid, Eigen::VectorXd full_values,
                              std::optional<Envelope> env = std::nullopt);

  /// Raw samples at arbitrary nodes; no interpolation between them.
  GridFunction(double domain_end, Eigen::VectorXd nodes, Eigen::VectorXd values,
               std::optional<Envelope> env = std::nullopt);

  bool has_interpolant() const noexcept { return grid_.has_value(); }
  const GridSpec& grid() const;
  double domain_end() const noexcept { return domain_end_; }
  Eigen::Index size() const noexcept { return nodes_.size(); }
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double origin_value() const noexcept { return origin_; }
  /// Origin followed by the node values (matches GridSpec::x_nodes()).
  Eigen::VectorXd full_values() const;
  const std::optional<Envelope>& envelope() const noexcept { return envelope_; }

  /// Interpolated value; x must lie in [0,T].
  double operator()(double x) const;
  /// d/dx of the interpolant, x in (0,T].
  double derivative(double x) const;

  double sup_norm() const;

 private:
  GridFunction() = default;
  void check_envelope() const;

  double domain_end_ = 0.0;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd values_;
  double origin_ = 0.0;
  std::optional<Envelope> envelope_;
  std::optional<GridSpec> grid_;
};

}  // namespace cenfrac
