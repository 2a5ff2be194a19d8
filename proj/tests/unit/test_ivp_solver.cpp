#include <doctest.h>

#include <cmath>

#include "cenfrac/errors.hpp"
#include "cenfrac/ivp_solver.hpp"
#include "cenfrac/rl_calculus.hpp"

using namespace cenfrac;

namespace {
// x^β/Γ(1+β)·βπ/(βπ − sin βπ), computed independently of the library.
double const_solution(double x, double b) {
  const double pi = std::acos(-1.0);
  return std::pow(x, b) / std::tgamma(1.0 + b) * b * pi / (b * pi - std::sin(b * pi));
}
}

TEST_SUITE("ivp_solver") {

TEST_CASE("constant forcing has the closed-form solution") {
  for (double b : {0.3, 0.5, 0.7}) {
    const FracOrder o(b);
    const auto s = solve_linear(Forcing::constant(1.0, o), 0.0, o, 1.0, 1e-10);
    CHECK(s.tail_bound() < 1e-10);
    for (double x : {0.01, 0.3, 1.0}) CHECK(s(x) == doctest::Approx(const_solution(x, b)).epsilon(1e-9));
    CHECK(s(0.0) == 0.0);
  }
}

TEST_CASE("solution satisfies the equation") {
  const FracOrder o(0.5);
  const auto g = Forcing::cosine(o);
  const auto s = solve_linear(g, 1.0, o, 1.0, 1e-11);
  const auto u = s.as_smooth_fn();
  for (double x : {0.2, 0.5, 0.9}) {
    CHECK(censored_derivative(u, o, x, DerivativeRoute::definition) == doctest::Approx(std::cos(x)).epsilon(1e-6));
  }
}

TEST_CASE("linearity and monotonicity in the data") {
  const FracOrder o(0.4);
  const auto a = solve_linear(Forcing::constant(1.0, o), 0.0, o, 1.0, 1e-11);
  const auto b = solve_linear(Forcing::power(0.5, 1.0, o), 0.0, o, 1.0, 1e-11);
  const auto ab = solve_linear(Forcing::constant(2.0, o), 0.5, o, 1.0, 1e-11);
  for (double x : {0.1, 0.6, 1.0}) {
    CHECK(ab(x) == doctest::Approx(0.5 + 2.0 * a(x)).epsilon(1e-10));
    // g ≥ 0 gives u ≥ u0 and larger g gives larger u.
    CHECK(b(x) >= 0.0);
    CHECK(a(x) >= b(x));
  }
}

TEST_CASE("scaling u(x) -> u(kx)") {
  const FracOrder o(0.5);
  const auto s = solve_linear(Forcing::constant(1.0, o), 0.0, o, 2.0, 1e-11);
  for (double k : {0.5, 2.0}) {
    CHECK(s(k * 0.9) == doctest::Approx(std::pow(k, 0.5) * s(0.9)).epsilon(1e-9));
  }
}

TEST_CASE("solution is unique across tolerances") {
  const FracOrder o(0.6);
  const auto g = Forcing::power(1.0, 1.0, o);
  const auto s1 = solve_linear(g, 0.0, o, 1.0, 1e-6);
  const auto s2 = solve_linear(g, 0.0, o, 1.0, 1e-12);
  CHECK(s2.depth() >= s1.depth());
  for (double x : {0.3, 1.0}) CHECK(std::abs(s1(x) - s2(x)) <= s1.tail_bound() + 1e-12);
}

TEST_CASE("zero forcing gives the constant") {
  const FracOrder o(0.5);
  const auto s = solve_linear(Forcing::zero(), 2.0, o, 1.0, 1e-10);
  for (double x : {0.0, 0.5, 1.0}) CHECK(s(x) == 2.0);
}

TEST_CASE("eigen series") {
  const FracOrder o(0.5);
  const auto s = solve_eigen(0.0, 1.5, o, 1.0, 1e-12);
  CHECK(s(0.7) == 1.5);
  const auto e = solve_eigen(1.0, 1.0, o, 1.0, 1e-12);
  const auto u = e.as_smooth_fn();
  for (double x : {0.3, 0.8}) {
    CHECK(censored_derivative(u, o, x, DerivativeRoute::definition) == doctest::Approx(e(x)).epsilon(1e-7));
  }
  // Increasing for λ > 0, decreasing for λ < 0.
  const auto d = solve_eigen(-1.0, 1.0, o, 1.0, 1e-12);
  CHECK(e(1.0) > e(0.5));
  CHECK(d(1.0) < d(0.5));
}

TEST_CASE("affine solver agrees with the eigen series") {
  const FracOrder o(0.5);
  const double lam = -1.0;
  const double T = std::min(1.0, affine_validity_end(lam, o));
  const auto s = solve_affine_negative(lam, Forcing::zero(), 1.0, o, T, 1e-12);
  const auto e = solve_eigen(lam, 1.0, o, T, 1e-13);
  for (double x : {0.1 * T, 0.5 * T, T}) CHECK(s(x) == doctest::Approx(e(x)).epsilon(1e-9));
  CHECK_THROWS_AS(solve_affine_negative(lam, Forcing::zero(), 1.0, o, 2.0 * affine_validity_end(lam, o), 1e-10),
                  DomainError);
}

TEST_CASE("Picard iteration reaches the linear solution") {
  const FracOrder o(0.5);
  NonlinearSpec spec{[](double, double y) { return y; }, 1.0, 1.0, 2.0, 1.0};
  const auto r = solve_nonlinear(spec, o, 1.0, 1e-12, 200);
  CHECK(r.horizon == doctest::Approx(horizon_T1(spec, o, 1.0)));
  CHECK(r.horizon <= 1.0);
  const auto e = solve_eigen(1.0, 1.0, o, r.horizon, 1e-14);
  for (double f : {0.25, 0.5, 1.0}) CHECK(r.solution(f * r.horizon) == doctest::Approx(e(f * r.horizon)).epsilon(1e-10));
  CHECK(r.steps.back() < 1e-12);
}

TEST_CASE("Picard fixed point satisfies the Volterra equation") {
  const FracOrder o(0.5);
  NonlinearSpec spec{[](double, double y) { return std::sin(y); }, 1.0, 1.0, 1.0, 0.5};
  const auto r = solve_nonlinear(spec, o, 1.0, 1e-12, 200);
  const auto u = r.solution.as_smooth_fn();
  for (double f : {0.4, 0.9}) {
    const double x = f * r.horizon;
    CHECK(censored_derivative(u, o, x, DerivativeRoute::definition) ==
          doctest::Approx(std::sin(r.solution(x))).epsilon(1e-6));
  }
}

TEST_CASE("nonlinear spec validation") {
  const FracOrder o(0.5);
  NonlinearSpec bad{[](double, double y) { return y; }, -1.0, 1.0, 1.0, 0.0};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Holder limit at the origin") {
  const FracOrder o(0.5);
  const auto g = Forcing::cosine(o);
  const auto s = solve_linear(g, 0.0, o, 1.0, 1e-12);
  CHECK(holder_limit_check(s, g) < 1e-3);
  CHECK_THROWS_AS(holder_limit_check(s, Forcing::power(-0.25, 1.0, o)), UsageError);
}

}
