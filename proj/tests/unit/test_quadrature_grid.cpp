#include <doctest.h>

#include <cmath>

#include "cenfrac/errors.hpp"
#include "cenfrac/grid_function.hpp"
#include "cenfrac/quadrature.hpp"

using namespace cenfrac;
using namespace cenfrac::quad;

namespace {
double beta_fn(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }
}

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Jacobi integrates polynomials against the weight exactly") {
  for (auto [a, b] : {std::pair{-0.5, -0.5}, {-0.3, 0.7}, {0.4, -0.9}, {0.0, 0.0}}) {
    const auto rule = gauss_jacobi<double>(16, a, b);
    // ∫_{-1}^{1} (1−x)^a (1+x)^b ((1+x)/2)^k dx = 2^{a+b+1} B(a+1, b+k+1)
    for (int k = 0; k < 32; ++k) {
      const double got = rule.integrate([k](double x) { return std::pow((1.0 + x) / 2.0, k); });
      const double ref = std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + k + 1.0);
      CHECK(got == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gauss_jacobi<double>(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi<double>(4, -1.0, 0.0), DomainError);
}

TEST_CASE("singular unit rule resolves power cusps") {
  for (auto [c, d] : {std::pair{-0.5, -0.5}, {0.0, -0.7}, {-0.3, 0.0}}) {
    const auto rule = singular_unit_rule(c, d);
    for (double p : {0.0, 0.25, 0.5, 1.3, 3.0}) {
      const double got = rule->integrate([p](double t) { return std::pow(t, p); });
      CHECK(got == doctest::Approx(beta_fn(c + p + 1.0, d + 1.0)).epsilon(1e-12));
    }
  }
  CHECK(singular_unit_rule(-0.5, -0.5).get() == singular_unit_rule(-0.5, -0.5).get());
}

TEST_CASE("two-sided graded rule") {
  // The panels next to each end are left ungraded; their error scales like sqrt(floor).
  const auto rule = two_sided_graded_rule(0.0, 1.0, 1e-14, 1e-14);
  const double got = rule.integrate([](double t) { return std::pow(t, -0.5) + std::pow(1.0 - t, -0.5); });
  CHECK(got == doctest::Approx(4.0).epsilon(1e-6));
  const auto smooth = two_sided_graded_rule(0.0, 2.0, 1e-6, 1e-6);
  CHECK(smooth.integrate([](double t) { return std::exp(t); }) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
}

}

TEST_SUITE("grid_function") {

TEST_CASE("Chebyshev-Lobatto points and barycentric interpolation") {
  const auto pts = chebyshev_lobatto<double>(8, 0.0, 2.0);
  CHECK(pts(0) == 0.0);
  CHECK(pts(8) == 2.0);
  for (int k = 0; k < 8; ++k) CHECK(pts(k) < pts(k + 1));
  const auto lam = lobatto_barycentric_weights<double>(8);
  Eigen::VectorXd v = pts.unaryExpr([](double x) { return x * x * x - x; });
  for (double t : {0.1, 0.77, 1.9}) {
    CHECK(barycentric_eval(pts, lam, v, t) == doctest::Approx(t * t * t - t).epsilon(1e-13));
    CHECK(barycentric_derivative(pts, lam, v, t) == doctest::Approx(3 * t * t - 1).epsilon(1e-12));
  }
  CHECK(barycentric_derivative(pts, lam, v, pts(3)) == doctest::Approx(3 * pts(3) * pts(3) - 1).epsilon(1e-12));
}

TEST_CASE("cusp exponent") {
  CHECK(cusp_exponent(std::nullopt) == 1.0);
  CHECK(cusp_exponent(Envelope{1.0, 0.5}) == 0.5);
  CHECK(cusp_exponent(Envelope{1.0, 1.5}) == 0.75);
  CHECK(cusp_exponent(Envelope{1.0, 2.0}) == 1.0);
  CHECK(cusp_exponent(Envelope{1.0, 0.0}) == 1.0);
}

TEST_CASE("sampled x^alpha is reproduced through the cusp") {
  for (double a : {0.3, 0.5, 1.7}) {
    const auto f = GridFunction::sample([a](double x) { return std::pow(x, a); }, 2.0, Envelope{1.0, a});
    CHECK(f.has_interpolant());
    CHECK(f.origin_value() == 0.0);
    CHECK(f.size() == GridFunction::kDefaultOrder);
    for (double x : {1e-6, 1e-3, 0.3, 1.0, 2.0}) {
      CHECK(std::abs(f(x) - std::pow(x, a)) < 1e-13);
    }
    // 0.5^a sits on a node for T = 2 (w midpoint); also probe just beside it.
    for (double x : {0.5, 0.5 * (1.0 + 1e-15), 0.5 * (1.0 + 1e-12), 0.9}) {
      CHECK(f.derivative(x) == doctest::Approx(a * std::pow(x, a - 1.0)).epsilon(1e-9));
    }
    CHECK(f.sup_norm() == doctest::Approx(std::pow(2.0, a)).epsilon(1e-14));
  }
}

TEST_CASE("envelope violations are rejected") {
  CHECK_THROWS_AS(GridFunction::sample([](double x) { return 2.0 * x; }, 1.0, Envelope{1.0, 1.0}), ContractError);
  Eigen::VectorXd nodes(2), vals(2);
  nodes << 0.5, 1.0;
  vals << 1.0, 2.0;
  const GridFunction raw(1.0, nodes, vals);
  CHECK_FALSE(raw.has_interpolant());
  CHECK_THROWS(raw.grid());
}

TEST_CASE("full values start at the origin") {
  const GridSpec g(1.0, 1.0, 8);
  Eigen::VectorXd full = g.x_nodes().array() + 3.0;
  const auto f = GridFunction::on_grid(g, full);
  CHECK(f.origin_value() == 3.0);
  CHECK((f.full_values() - full).norm() == 0.0);
  CHECK(f(0.0) == 3.0);
  CHECK(f(0.4) == doctest::Approx(3.4).epsilon(1e-14));
}

}
