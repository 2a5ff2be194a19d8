#include <doctest.h>

#include <cmath>

#include "cenfrac/errors.hpp"
#include "cenfrac/ivp_solver.hpp"
#include "cenfrac/parallel.hpp"
#include "cenfrac/stochastic.hpp"

using namespace cenfrac;

TEST_SUITE("stochastic") {

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(7, 0), b(7, 0), c(7, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  RngStream a2(7, 0);
  CHECK(a2.uniform() != c.uniform());
  const RngStream root(3, 0);
  auto x = root.child(5), y = root.child(5), z = root.child(6);
  const double vx = x.uniform();
  CHECK(vx == y.uniform());
  CHECK(vx != z.uniform());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("Beta increments have the right moments") {
  const FracOrder o(0.3);
  RngStream rng(1, 0);
  const int n = 200000;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = sample_beta_increment(rng, o);
    s1 += z;
    s2 += z * z;
  }
  const double m = 0.7, v = 0.7 * 0.3 / 2.0;
  CHECK(std::abs(s1 / n - m) < 5.0 * std::sqrt(v / n));
  CHECK(s2 / n == doctest::Approx(0.7 * 1.7 / 2.0).epsilon(5e-3));
}

TEST_CASE("chains decrease and obey the stop rules") {
  const FracOrder o(0.5);
  RngStream rng(2, 0);
  const auto c = sample_chain(1.0, rng, o, 10);
  CHECK(c.stop_reason == ChainStop::depth_cap);
  CHECK(c.positions.front() == 1.0);
  for (std::size_t i = 1; i < c.positions.size(); ++i) CHECK(c.positions[i] < c.positions[i - 1]);
  const auto t = sample_chain(1.0, rng, o, 100000, 0.01);
  CHECK(t.stop_reason == ChainStop::threshold);
  CHECK(t.positions.back() >= 0.01);
}

TEST_CASE("stable law Laplace transform") {
  for (double b : {0.5, 0.7}) {
    const FracOrder o(b);
    RngStream rng(9, 0);
    const int n = 100000;
    for (double k : {0.5, 1.0, 2.0}) {
      double s = 0.0;
      RngStream r = rng.child(static_cast<std::uint64_t>(k * 10));
      for (int i = 0; i < n; ++i) s += std::exp(-k * sample_stable(r, o));
      CHECK(std::abs(s / n - std::exp(-std::pow(k, b))) < 0.01);
    }
  }
}

TEST_CASE("lifetime estimator") {
  const FracOrder o(0.5);
  const auto e = estimate_lifetime(1.0, o, 20000, 60, RngStream(4, 0));
  const double ref = expected_lifetime(1.0, o);
  CHECK(std::abs(e.estimate - ref) < 5.0 * e.std_error + e.tail_bound);
  CHECK(ref == doctest::Approx(3.1052299527891131).epsilon(1e-13));
  CHECK(expected_lifetime(4.0, o) == doctest::Approx(2.0 * ref).epsilon(1e-14));
}

TEST_CASE("series estimator against the deterministic solver") {
  const FracOrder o(0.5);
  const auto g = Forcing::cosine(o);
  const auto e = estimate_series_solution(g, 1.0, o, 5000, 40, RngStream(5, 0));
  const double ref = solve_linear(g, 0.0, o, 1.0, 1e-10)(1.0);
  CHECK(std::abs(e.estimate - ref) < 5.0 * e.std_error + e.tail_bound);
}

TEST_CASE("estimators are deterministic across thread caps") {
  const FracOrder o(0.5);
  const int saved = thread_cap();
  set_thread_cap(1);
  const auto a = estimate_lifetime(1.0, o, 3000, 30, RngStream(8, 0));
  set_thread_cap(4);
  const auto b = estimate_lifetime(1.0, o, 3000, 30, RngStream(8, 0));
  set_thread_cap(saved);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("censored paths") {
  const FracOrder o(0.5);
  RngStream rng(6, 0);
  const double thr = default_stop_threshold(1.0, o);
  CHECK(thr == doctest::Approx(1e-3));
  const auto p = simulate_censored_path(1.0, o, 1e-3, thr, rng);
  CHECK(p.positions.back() < thr);
  CHECK(p.lifetime == doctest::Approx(1e-3 * (p.times.size() - 1)).epsilon(1e-9));
  CHECK(static_cast<long>(p.resurrection_times.size()) == p.resurrection_count);
  for (std::size_t i = 1; i < p.positions.size(); ++i) CHECK(p.positions[i] <= p.positions[i - 1]);
  RngStream r2(6, 1);
  CHECK_THROWS_AS(simulate_censored_path(1.0, o, 1e-6, thr, r2, 10), RunawayPathError);
}

TEST_CASE("path lifetime mean") {
  const FracOrder o(0.5);
  const double thr = default_stop_threshold(1.0, o);
  const auto e = estimate_path_lifetime(1.0, o, 1e-3, thr, 2000, RngStream(10, 0));
  const double ref = expected_lifetime(1.0, o);
  CHECK(std::abs(e.lifetime.estimate - ref) < 5.0 * e.lifetime.std_error + e.lifetime.tail_bound + 0.05 * ref);
  CHECK(e.runaway == 0);
}

TEST_CASE("first resurrections lie in [0,x)") {
  const FracOrder o(0.5);
  const auto v = sample_first_resurrections(1.0, o, 2000, RngStream(12, 0));
  REQUIRE(v.size() == 2000);
  double m = 0.0;
  for (double y : v) {
    CHECK(y >= 0.0);
    CHECK(y < 1.0);
    m += y;
  }
  CHECK(m / 2000 > 0.0);
}

}
