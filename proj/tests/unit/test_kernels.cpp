#include <doctest.h>

#include <cmath>
#include <random>

#include "cenfrac/errors.hpp"
#include "cenfrac/kernels.hpp"
#include "cenfrac/quadrature.hpp"
#include "cenfrac/rl_calculus.hpp"

using namespace cenfrac;
using namespace cenfrac::quad;

TEST_SUITE("kernels") {

TEST_CASE("k1 is a Beta(1-beta, beta) density") {
  for (double b : {0.2, 0.5, 0.8}) {
    const FracOrder o(b);
    const double x = 1.7;
    // r = x(1+t)/2 turns (x−r)^{β−1} r^{−β} into the Jacobi weight (1−t)^{β−1}(1+t)^{−β}.
    const auto rule = gauss_jacobi<double>(16, b - 1.0, -b);
    auto moment = [&](double a) {
      return rule.integrate([&](double t) {
        const double r = x * (1.0 + t) / 2.0;
        return k1_density(x, r, o) * std::pow(r, a) / (std::pow(1.0 - t, b - 1.0) * std::pow(1.0 + t, -b));
      }) * x / 2.0;
    };
    CHECK(moment(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    // E[Z] = 1 − β and E[Z²] = (1−β)(2−β)/2 for Z ~ Beta(1−β, β).
    CHECK(moment(1.0) == doctest::Approx(x * (1.0 - b)).epsilon(1e-13));
    CHECK(moment(2.0) == doctest::Approx(x * x * (1.0 - b) * (2.0 - b) / 2.0).epsilon(1e-13));
    for (int k = 0; k <= 4; ++k) {
      CHECK(moment(k) == doctest::Approx(kernel_moment(1, x, k, o)).epsilon(1e-12));
    }
  }
  const FracOrder o(0.5);
  CHECK_THROWS_AS(k1_density(1.0, 1.0, o), DomainError);
  CHECK_THROWS_AS(k1_density(1.0, 0.0, o), DomainError);
}

TEST_CASE("kernel moments") {
  const FracOrder o(0.4);
  for (int j = 1; j <= 5; ++j) {
    CHECK(kernel_moment(j, 2.0, 0.7, o) == doctest::Approx(std::pow(2.0, 0.7) * std::pow(rho(0.7, o), j)));
  }
}

TEST_CASE("both recursions for k_j agree") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  const FracOrder o(0.6);
  const KernelEval k2(2, 1.0, 24);
  for (int i = 0; i < 20; ++i) {
    const double r = u(gen);
    const double outer = k2(r, o, KernelOrdering::outer);
    const double inner = k2(r, o, KernelOrdering::inner);
    CHECK(outer > 0.0);
    CHECK(outer == doctest::Approx(inner).epsilon(1e-8));
  }
  const KernelEval k1(1, 1.3);
  CHECK(k1(0.4, o) == doctest::Approx(k1_density(1.3, 0.4, o)).epsilon(1e-14));
}

TEST_CASE("k_j scales like 1/x") {
  const FracOrder o(0.35);
  const KernelEval a(2, 1.0, 24), b(2, 3.0, 24);
  for (double r : {0.1, 0.5, 0.9}) CHECK(b(3.0 * r, o) == doctest::Approx(a(r, o) / 3.0).epsilon(1e-10));
}

TEST_CASE("K multiplies x^alpha by rho") {
  for (double b : {0.3, 0.5, 0.7}) {
    const FracOrder o(b);
    for (double a : {0.5, 1.0, 2.3}) {
      const auto psi = GridFunction::sample([a](double x) { return std::pow(x, a); }, 2.0, Envelope{1.0, a});
      const auto kpsi = apply_K(psi, o);
      REQUIRE(kpsi.envelope().has_value());
      CHECK(kpsi.envelope()->M == doctest::Approx(rho(a, o)));
      for (Eigen::Index i = 0; i < kpsi.size(); ++i) {
        const double x = kpsi.nodes()(i);
        CHECK(std::abs(kpsi.values()(i) - rho(a, o) * std::pow(x, a)) < 1e-11);
      }
    }
  }
}

TEST_CASE("J on the grid matches the closed form") {
  const FracOrder o(0.5);
  const auto phi = GridFunction::sample([](double x) { return x; }, 1.0, std::nullopt);
  const auto j = apply_J(phi, o);
  for (Eigen::Index i = 0; i < j.size(); ++i) {
    const double x = j.nodes()(i);
    CHECK(std::abs(j.values()(i) - monomial_rl_integral(1.0, o, x)) < 1e-12);
  }
}

TEST_CASE("Neumann sum of x^alpha") {
  const FracOrder o(0.5);
  const double a = 0.5, tol = 1e-10;
  const auto psi = GridFunction::sample([a](double x) { return std::pow(x, a); }, 1.0, Envelope{1.0, a});
  const auto res = neumann_sum(psi, o, tol);
  const double r = rho(a, o);
  CHECK(res.tail_bound < tol);
  CHECK(res.tail_bound == doctest::Approx(neumann_tail(1.0, 1.0, a, res.depth, o)));
  for (Eigen::Index i = 0; i < res.sum.size(); ++i) {
    const double x = res.sum.nodes()(i);
    CHECK(std::abs(res.sum.values()(i) - std::pow(x, a) * r / (1.0 - r)) < 1e-9);
  }
  const auto flat = GridFunction::sample([](double) { return 1.0; }, 1.0, std::nullopt);
  CHECK_THROWS_AS(neumann_sum(flat, o, tol), DivergenceError);
}

TEST_CASE("matrices are cached") {
  const FracOrder o(0.5);
  const GridSpec g(1.0, 0.5, 16);
  CHECK(k_matrix(g, o).get() == k_matrix(g, o).get());
  const auto& K = *k_matrix(g, o);
  CHECK(K(0, 0) == 1.0);
  // Rows of K are probability weights on nodes (constants are preserved).
  for (Eigen::Index k = 1; k < K.rows(); ++k) CHECK(K.row(k).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

}
