#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cenfrac/errors.hpp"
#include "cenfrac/special_functions.hpp"

using namespace cenfrac;

TEST_SUITE("special_functions") {

TEST_CASE("gamma matches std::tgamma") {
  for (double z = 0.01; z < 60.0; z *= 1.07) {
    const double ref = std::tgamma(z);
    CHECK(std::abs(cenfrac::gamma(z) - ref) <= 1e-13 * ref);
    CHECK(log_gamma(z) == doctest::Approx(std::lgamma(z)).epsilon(1e-13));
  }
  CHECK(cenfrac::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(cenfrac::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
}

TEST_CASE("log_gamma stays finite past overflow") {
  CHECK(std::isfinite(log_gamma(500.0)));
  CHECK(log_gamma(500.0) == doctest::Approx(std::lgamma(500.0)).epsilon(1e-14));
}

TEST_CASE("gamma_ratio") {
  CHECK(gamma_ratio(4.5, 2.5) == doctest::Approx(3.5 * 2.5).epsilon(1e-14));
  CHECK(gamma_ratio(300.5, 300.0) == doctest::Approx(std::exp(std::lgamma(300.5) - std::lgamma(300.0))).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(cenfrac::gamma(0.0), DomainError);
  CHECK_THROWS_AS(cenfrac::gamma(-1.5), DomainError);
  CHECK_THROWS_AS(FracOrder(0.0), DomainError);
  CHECK_THROWS_AS(FracOrder(1.0), DomainError);
  CHECK_THROWS_AS(FracOrder(std::nan("")), DomainError);
}

TEST_CASE("reflection identity at random orders") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 50; ++i) {
    const double b = u(gen);
    const FracOrder o(b);
    const double pi = std::numbers::pi;
    CHECK(o.gamma_1mb() * o.gamma_1pb() == doctest::Approx(b * pi / std::sin(b * pi)).epsilon(1e-13));
    CHECK(o.reflection() == doctest::Approx(b * pi / std::sin(b * pi)).epsilon(1e-13));
    CHECK(o.gamma_b() == doctest::Approx(std::tgamma(b)).epsilon(1e-13));
    CHECK(o.abs_gamma_neg() == doctest::Approx(std::abs(std::tgamma(-b))).epsilon(1e-12));
  }
}

TEST_CASE("rho lies in (0,1) and tends to 1 at the origin") {
  for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const FracOrder o(b);
    for (double a = 1e-3; a < 40.0; a *= 1.5) {
      const double r = rho(a, o);
      CHECK(r > 0.0);
      CHECK(r < 1.0);
      CHECK(c_coeff(a, o) == doctest::Approx(1.0 - r));
    }
    CHECK(rho(1e-10, o) == doctest::Approx(1.0).epsilon(1e-8));
    // Decreasing in alpha.
    CHECK(rho(2.0, o) < rho(1.0, o));
  }
  const FracOrder half(0.5);
  const double ref = std::tgamma(1.0) / (std::tgamma(1.5) * std::tgamma(0.5));
  CHECK(rho(0.5, half) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("eigen-series products") {
  for (double b : {0.2, 0.5, 0.8}) {
    const FracOrder o(b);
    const auto ps = ml_products(60, o);
    REQUIRE(ps.size() == 61);
    CHECK(ps[0] == 1.0);
    double p = 1.0;
    for (int n = 1; n <= 60; ++n) {
      p /= ml_product_factor(n, o);
      CHECK(ps[n] == doctest::Approx(p).epsilon(1e-12));
      CHECK(ml_product(n, o) == doctest::Approx(p).epsilon(1e-12));
      CHECK(log_ml_product(n, o) == doctest::Approx(std::log(p)).epsilon(1e-12));
      CHECK(ml_product_factor(n, o) == doctest::Approx(1.0 / rho(n * b, o) - 1.0).epsilon(1e-13));
    }
    // Superexponential decay: the factors grow without bound.
    CHECK(ml_product_factor(1000, o) > ml_product_factor(100, o));
    CHECK(ml_product_factor(100, o) > ml_product_factor(10, o));
    CHECK(ml_product_factor(100000, o) > 2.0 * ml_product_factor(100, o));
    CHECK(std::isfinite(log_ml_product(5000, o)));
    const double C = ml_product_constant(o);
    for (int n = 1; n <= 100; ++n) {
      CHECK(log_ml_product(n, o) <= std::log(C) + log_product_envelope(n, o) + 1e-12);
    }
  }
}

}
