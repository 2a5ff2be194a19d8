#include <doctest.h>

#include <cmath>

#include "cenfrac/errors.hpp"
#include "cenfrac/rl_calculus.hpp"

using namespace cenfrac;

TEST_SUITE("rl_calculus") {

TEST_CASE("R-L integral of monomials") {
  for (double b : {0.3, 0.5, 0.7}) {
    const FracOrder o(b);
    for (double a : {0.0, 0.5, 1.0, 2.5}) {
      for (double x : {0.1, 1.0, 3.0}) {
        const double got = rl_integral([a](double r) { return std::pow(r, a); }, o, x);
        const double ref = std::tgamma(a + 1) / std::tgamma(a + b + 1) * std::pow(x, a + b);
        CHECK(got == doctest::Approx(ref).epsilon(1e-12));
        CHECK(monomial_rl_integral(a, o, x) == doctest::Approx(ref).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("R-L derivative of monomials and constants") {
  const FracOrder o(0.5);
  for (double a : {0.5, 1.0, 2.0}) {
    const auto u = SmoothFn::monomial(a, 1.0, 2.0);
    for (double x : {0.25, 1.0, 2.0}) {
      CHECK(rl_derivative(u, o, x) == doctest::Approx(monomial_rl_derivative(a, o, x)).epsilon(1e-11));
    }
  }
  const auto one = SmoothFn::constant(1.0, 1.0);
  CHECK(rl_derivative(one, o, 0.5) == doctest::Approx(std::pow(0.5, -0.5) / std::tgamma(0.5)).epsilon(1e-13));
}

TEST_CASE("censored derivative kills constants") {
  for (double b : {0.2, 0.5, 0.8}) {
    const FracOrder o(b);
    const auto c = SmoothFn::constant(3.0, 1.0);
    for (double x : {0.1, 0.5, 1.0}) {
      CHECK(std::abs(censored_derivative(c, o, x, DerivativeRoute::definition)) < 1e-12);
      CHECK(std::abs(censored_derivative(c, o, x, DerivativeRoute::jump_integral)) < 1e-12);
    }
  }
}

TEST_CASE("censored derivative of x^alpha, both routes") {
  for (double b : {0.3, 0.5, 0.7}) {
    const FracOrder o(b);
    for (double a : {0.5, 1.0, 1.5, 3.0}) {
      const auto u = SmoothFn::monomial(a, 1.0, 1.0);
      for (double x : {0.2, 0.6, 1.0}) {
        const double ref = c_coeff(a, o) * std::tgamma(a + 1) / std::tgamma(a + 1 - b) * std::pow(x, a - b);
        CHECK(monomial_censored_derivative(a, o, x) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(censored_derivative(u, o, x, "definition") == doctest::Approx(ref).epsilon(1e-9));
        CHECK(censored_derivative(u, o, x, "jump_integral") == doctest::Approx(ref).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("censored derivative is linear") {
  const FracOrder o(0.4);
  const SmoothFn u([](double x) { return std::sin(x) + 2.0 * x * x; },
                   [](double x) { return std::cos(x) + 4.0 * x; }, 1.0);
  const SmoothFn s([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }, 1.0);
  const auto q = SmoothFn::monomial(2.0, 2.0, 1.0);
  for (double x : {0.3, 0.9}) {
    CHECK(censored_derivative(u, o, x) ==
          doctest::Approx(censored_derivative(s, o, x) + censored_derivative(q, o, x)).epsilon(1e-9));
  }
}

TEST_CASE("routes and derivative self-check") {
  CHECK(parse_route("definition") == DerivativeRoute::definition);
  CHECK(parse_route("jump") == DerivativeRoute::jump_integral);
  CHECK_THROWS_AS(parse_route("spectral"), UsageError);
  CHECK_THROWS_AS(SmoothFn([](double x) { return x * x; }, [](double) { return 1.0; }, 1.0), ContractError);
}

TEST_CASE("forcing envelopes") {
  const FracOrder o(0.5);
  const auto c = Forcing::constant(2.0, o);
  CHECK(c(0.3) == 2.0);
  CHECK(c.check_envelope(1.0, o));
  CHECK(c.envelope.alpha == doctest::Approx(0.5));
  const auto p = Forcing::power(-0.25, 3.0, o);
  CHECK(p(0.5) == doctest::Approx(3.0 * std::pow(0.5, -0.25)));
  CHECK(p.envelope.alpha == doctest::Approx(0.25));
  CHECK(Forcing::cosine(o).check_envelope(2.0, o));
  CHECK(Forcing::zero().is_zero());
  const auto t = Forcing::table({0.0, 1.0}, {0.0, 1.0}, Envelope{1.0, 1.5});
  CHECK(t(0.5) == doctest::Approx(0.5));
  CHECK(t(2.0) == doctest::Approx(1.0));
  CHECK(t.check_envelope(1.0, o));
  const auto bad = Forcing::table({0.0, 1.0}, {5.0, 5.0}, Envelope{1.0, 1.5});
  CHECK_FALSE(bad.check_envelope(1.0, o));
  const Forcing flat{[](double) { return 1.0; }, Envelope{1.0, 0.0}, 1.0, std::nullopt, "flat"};
  CHECK_THROWS_AS(flat.certified(o), DivergenceError);
}

}
