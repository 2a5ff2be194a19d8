#include "cenfrac/verify.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>

#include "cenfrac/errors.hpp"
#include "cenfrac/ivp_solver.hpp"
#include "cenfrac/kernels.hpp"
#include "cenfrac/parallel.hpp"
#include "cenfrac/rl_calculus.hpp"
#include "cenfrac/stochastic.hpp"

namespace cenfrac {

namespace {

using Clock = std::chrono::steady_clock;

// High-precision closed-form values at β = 1/2 (computed independently at 20 digits).
constexpr double kConstSolutionHalf = 3.1052299527891131;  // x^β/Γ(1+β)·βπ/(βπ−sinβπ), x=1
constexpr double kHorizonHalf = 0.10370804958123898;       // (Γ(3/2) − 1/Γ(1/2))²

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

struct Ctx {
  const VerifyConfig& cfg;
  std::vector<CheckResult>& out;

  void add(std::string id, int crit, std::string desc, double target, double achieved, double error,
           double tolerance, double seconds, std::string note = {}, bool extra_ok = true) {
    CheckResult r;
    r.id = std::move(id);
    r.criterion = crit;
    r.description = std::move(desc);
    r.target = target;
    r.achieved = achieved;
    r.error = error;
    r.tolerance = tolerance * cfg.tol_scale;
    r.passed = extra_ok && std::isfinite(error) && error < r.tolerance;
    r.seconds = seconds;
    r.note = std::move(note);
    out.push_back(std::move(r));
  }

  std::size_t mc(double n, double floor = 1000.0) const {
    return static_cast<std::size_t>(std::max(floor, std::round(n * cfg.mc_scale)));
  }

  RngStream rng(std::uint64_t stream) const { return RngStream(cfg.seed, stream); }
};

std::vector<double> beta_set(const VerifyConfig& cfg) {
  std::vector<double> set{0.3, 0.5, 0.7};
  if (std::find(set.begin(), set.end(), cfg.beta) == set.end()) set.push_back(cfg.beta);
  return set;
}

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return xs;
}

// Independent oracle for the constant-forcing solution.
double const_solution_oracle(double x, double beta) {
  const double bp = beta * std::numbers::pi;
  return std::pow(x, beta) / std::tgamma(1.0 + beta) * bp / (bp - std::sin(bp));
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ------------------------------------------------------------------------

void criterion1(Ctx& c) {
  for (double b : beta_set(c.cfg)) {
    Timer t;
    const FracOrder o(b);
    double worst = 0.0, at_target = 0.0, at_value = 0.0;
    for (double a : {0.25, 0.5, 1.0, 2.0}) {
      const SmoothFn u = SmoothFn::monomial(a, 1.0, 1.0);
      for (int i = 1; i <= 8; ++i) {
        const double x = i / 8.0;
        const double rhs = c_coeff(a, o) * rl_derivative(u, o, x);
        for (auto route : {DerivativeRoute::jump_integral, DerivativeRoute::definition}) {
          const double lhs = censored_derivative(u, o, x, route);
          const double rel = std::abs(lhs - rhs) / std::abs(rhs);
          if (rel >= worst) {
            worst = rel;
            at_target = rhs;
            at_value = lhs;
          }
        }
      }
    }
    c.add("C01.beta=" + fmt("%g", b), 1,
          "D^b x^a = C(a,b) d^b x^a, a in {0.25,0.5,1,2}, 8 points, both routes", at_target,
          at_value, worst, 1e-6, t.seconds());
  }
}

void criterion2(Ctx& c) {
  for (double b : beta_set(c.cfg)) {
    Timer t;
    const FracOrder o(b);
    const SeriesSolution s = solve_linear(Forcing::constant(1.0, o), 0.0, o, 1.0, 1e-12);
    std::vector<double> xs = log_points(0.01, 1.0, 200);
    for (int k = 1; k <= s.grid_values()->size(); ++k) {
      const double x = s.grid_values()->nodes()(k - 1);
      if (x >= 0.01) xs.push_back(x);
    }
    double worst = 0.0;
    for (double x : xs) {
      const double ex = const_solution_oracle(x, b);
      worst = std::max(worst, std::abs(s(x) - ex) / ex);
    }
    c.add("C02.beta=" + fmt("%g", b), 2, "solve_linear(g=1) vs closed form, sup rel over [0.01,1]",
          const_solution_oracle(1.0, b), s(1.0), worst, 1e-8, t.seconds(),
          "depth " + std::to_string(s.depth()));
  }
  Timer t;
  const FracOrder o(0.5);
  const double v = solve_linear(Forcing::constant(1.0, o), 0.0, o, 1.0, 1e-12)(1.0);
  c.add("C02.value", 2, "u(1) at beta=0.5 equals 3.10522995279 (closed form)", kConstSolutionHalf,
        v, std::abs(v - kConstSolutionHalf) / kConstSolutionHalf, 1e-8, t.seconds());
}

void criterion3(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const double b = o.beta();
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const SeriesSolution s = solve_linear(Forcing::power(a, 1.0, o), 0.0, o, 1.0, 1e-12);
    const double C = 1.0 - std::tgamma(a + 1.0) / (std::tgamma(a + b + 1.0) * std::tgamma(1.0 - b));
    for (double x : log_points(0.01, 1.0, 200)) {
      const double ex = std::tgamma(a + 1.0) / std::tgamma(a + b + 1.0) * std::pow(x, a + b) / C;
      worst = std::max(worst, std::abs(s(x) - ex) / ex);
    }
  }
  c.add("C03", 3, "solve_linear(g=x^a) vs J^b x^a / C(a+b,b), a in {0.5,1,2}", 0.0, worst, worst,
        1e-8, t.seconds());
}

void criterion4(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  double worst = 0.0;
  for (double a : {0.25, 0.5, 1.0, 2.0}) {
    const double r = std::tgamma(a + 1.0 - o.beta()) / (std::tgamma(1.0 + a) * std::tgamma(1.0 - o.beta()));
    GridFunction f = GridFunction::sample([a](double x) { return std::pow(x, a); }, 1.0, Envelope{1.0, a});
    for (int j = 1; j <= 5; ++j) {
      f = apply_K(f, o);
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        const double ex = std::pow(f.nodes()(i), a) * std::pow(r, j);
        worst = std::max(worst, std::abs(f.values()(i) - ex) / ex);
      }
    }
  }
  c.add("C04", 4, "K^j x^a = rho(a,b)^j x^a, j<=5, a in {0.25,0.5,1,2}", 0.0, worst, worst, 1e-8,
        t.seconds());
}

void criterion5(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const double M = 1.5;
  double worst = 0.0;
  for (double a : {0.25, 0.5, 1.0, 2.0}) {
    const GridFunction psi = GridFunction::sample([&](double x) { return M * std::pow(x, a); }, 1.0,
                                                  Envelope{M, a});
    const NeumannResult ns = neumann_sum(psi, o, 1e-12);
    const double factor = 1.0 / (std::tgamma(1.0 + a) * std::tgamma(1.0 - o.beta()) /
                                     std::tgamma(a + 1.0 - o.beta()) -
                                 1.0);
    for (double x : log_points(0.01, 1.0, 100)) {
      const double ex = M * std::pow(x, a) * factor;
      worst = std::max(worst, std::abs(ns.sum(x) - ex) / ex);
    }
  }
  c.add("C05", 5, "neumann_sum(M x^a) = M x^a (1/rho - 1)^-1", 0.0, worst, worst, 1e-8, t.seconds());
}

double eigen_residual(const SeriesSolution& s, double lambda, const FracOrder& o) {
  const SmoothFn u = s.as_smooth_fn();
  double worst = 0.0;
  for (int i = 0; i <= 45; ++i) {
    const double x = 0.1 + 0.9 * i / 45.0;
    worst = std::max(worst, std::abs(censored_derivative(u, o, x) - lambda * s(x)));
  }
  return worst;
}

void criterion6(Ctx& c) {
  const FracOrder o(c.cfg.beta);
  int violations = 0;
  std::string scan_note;
  for (double lambda : {-1.0, 1.0}) {
    Timer t;
    const SeriesSolution s = solve_eigen(lambda, 1.0, o, 1.0, 1e-12);
    const double res = eigen_residual(s, lambda, o);
    c.add("C06.lambda=" + fmt("%g", lambda), 6, "sup_[0.1,1] |D^b u - lambda u| for the eigen-series",
          0.0, res, res, 1e-3, t.seconds(), "depth " + std::to_string(s.depth()));

    // Depth scan past the largest term, while truncation dominates quadrature noise.
    std::size_t peak = 0;
    double peak_mag = 0.0;
    for (std::size_t n = 0; n < s.terms().size(); ++n) {
      const double m = std::abs(std::get<Monomial>(s.terms()[n]).coef);
      if (m > peak_mag) {
        peak_mag = m;
        peak = n;
      }
    }
    std::vector<double> residuals;
    scan_note += fmt("lambda=%g ", lambda);
    for (std::size_t n = peak + 1; n < s.terms().size() && residuals.size() < 8; n += 2) {
      if (std::abs(std::get<Monomial>(s.terms()[n - 1]).coef) < 1e-7) break;
      residuals.push_back(eigen_residual(s.truncated(n), lambda, o));
      scan_note += fmt("N=%g:", static_cast<double>(n)) + fmt("%.2e ", residuals.back());
    }
    residuals.push_back(res);
    scan_note += fmt("full:%.2e; ", res);
    for (std::size_t k = 1; k < residuals.size(); ++k) {
      if (!(residuals[k] < residuals[k - 1])) ++violations;
    }
    if (residuals.size() < 3) ++violations;  // scan too short to say anything
  }
  c.add("C06.scan", 6, "residual decreases monotonically along the truncation-depth scan", 0.0,
        violations, violations, 0.5, 0.0, scan_note);
}

void criterion7(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  double worst = 0.0;
  int its = 0;
  for (double lambda : {-1.0, 1.0}) {
    const NonlinearSpec spec{[lambda](double, double y) { return lambda * y; }, std::abs(lambda), 1.0,
                             std::abs(lambda) * 2.0, 1.0};
    const NonlinearResult nl = solve_nonlinear(spec, o, 1.0, 1e-12, 500);
    const SeriesSolution e = solve_eigen(lambda, 1.0, o, nl.horizon, 1e-13);
    for (int i = 0; i <= 100; ++i) {
      const double x = nl.horizon * i / 100.0;
      worst = std::max(worst, std::abs(nl.solution(x) - e(x)));
    }
    its = std::max(its, nl.iterations);
  }
  c.add("C07.picard", 7, "Picard with f=lambda*y matches the eigen-series on [0,T1], lambda=+-1", 0.0,
        worst, worst, 1e-6, t.seconds(), "iterations " + std::to_string(its));

  Timer t2;
  const NonlinearSpec unit{[](double, double) { return 0.0; }, 1.0, 1.0, 1.0, 0.0};
  const double h = horizon_T1(unit, o, 1.0);
  const double b = o.beta();
  const double target = o.beta() == 0.5
                            ? kHorizonHalf
                            : std::min(1.0, std::pow(std::tgamma(1.0 + b) - 1.0 / std::tgamma(1.0 - b), 1.0 / b));
  c.add("C07.horizon", 7, "horizon_T1(Y=M, T=1) closed form", target, h, std::abs(h - target), 1e-7,
        t2.seconds());
}

void criterion8(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const McEstimate est =
      estimate_series_solution(Forcing::constant(1.0, o), 1.0, o, c.mc(1e5), 60, c.rng(8));
  const double secs = t.seconds();
  const double target = const_solution_oracle(1.0, o.beta());
  c.add("C08", 8, "chain estimate of u(1) for g=1 covers the closed form (4 SE + tail), < 30 s",
        target, est.estimate, std::abs(est.estimate - target), 4.0 * est.std_error + est.tail_bound,
        secs, fmt("se %.3e", est.std_error) + fmt(" n %g", static_cast<double>(est.samples)),
        secs < 30.0);
}

void criterion9(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const std::size_t n = c.mc(1e5);
  const McEstimate e1 = estimate_lifetime(1.0, o, n, 60, c.rng(91));
  const double target = const_solution_oracle(1.0, o.beta());
  c.add("C09.lifetime", 9, "Rao-Blackwell lifetime at x=1 covers the closed form (4 SE + tail)",
        target, e1.estimate, std::abs(e1.estimate - target), 4.0 * e1.std_error + e1.tail_bound,
        t.seconds(), fmt("se %.3e", e1.std_error));
  Timer t2;
  const McEstimate e2 = estimate_lifetime(2.0, o, n, 60, c.rng(92));
  const double ratio = e2.estimate / e1.estimate;
  const double se = ratio * std::hypot(e1.std_error / e1.estimate, e2.std_error / e2.estimate);
  const double bias = ratio * (e1.tail_bound / e1.estimate + e2.tail_bound / e2.estimate);
  const double want = std::pow(2.0, o.beta());
  c.add("C09.scaling", 9, "lifetime(2)/lifetime(1) covers 2^beta", want, ratio,
        std::abs(ratio - want), 4.0 * se + bias, t2.seconds(), fmt("se %.3e", se));
}

void criterion10(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const double thr = default_stop_threshold(1.0, o);
  const PathLifetimeEstimate p =
      estimate_path_lifetime(1.0, o, 1e-4, thr, c.mc(2e4, 500.0), c.rng(10), true);
  const double secs = t.seconds();
  const double target = const_solution_oracle(1.0, o.beta());
  const double rel = std::abs(p.lifetime.estimate - target) / target;
  c.add("C10.mean", 10, "path-simulator mean lifetime (h=1e-4) within 5% of the closed form, < 2 min",
        target, p.lifetime.estimate, rel, 0.05, secs,
        fmt("se %.3e", p.lifetime.std_error) + fmt(" threshold %.3e", thr) +
            fmt(" threshold bias <= %.3e", p.lifetime.tail_bound),
        secs < 120.0);
  const double shift = std::abs(p.shift) / p.coarse_lifetime.estimate;
  c.add("C10.halving", 10, "halving h (2e-4 -> 1e-4, coupled paths) moves the mean by < 1%", 0.0,
        p.shift, shift, 0.01, 0.0,
        fmt("coarse %.6f", p.coarse_lifetime.estimate) + fmt(" shift se %.2e", p.shift_std_error));
  c.add("C10.finite", 10, "every simulated path terminates before the step cap", 0.0,
        static_cast<double>(p.runaway), static_cast<double>(p.runaway), 0.5, 0.0,
        fmt("longest path %g steps", static_cast<double>(p.max_steps_used)));
}

void criterion11(Ctx& c) {
  const FracOrder o(c.cfg.beta);
  int k = 0;
  for (const Forcing& g : {Forcing::constant(1.0, o), Forcing::power(0.5, 1.0, o)}) {
    Timer t;
    const double target = solve_linear(g, 0.0, o, 1.0, 1e-12)(1.0);
    const McEstimate fk = estimate_feynman_kac(g, 1.0, o, c.mc(1e4, 500.0), 1e-4, c.rng(110 + k));
    c.add(std::string("C11.") + (k == 0 ? "g=1" : "g=x^0.5"), 11,
          "Feynman-Kac path average matches solve_linear at x=1 (4 SE + 5%)", target, fk.estimate,
          std::abs(fk.estimate - target), 4.0 * fk.std_error + 0.05 * std::abs(target), t.seconds(),
          fmt("se %.3e", fk.std_error));
    ++k;
  }
}

void criterion12(Ctx& c) {
  const FracOrder o(c.cfg.beta);
  for (const Forcing& g : {Forcing::constant(1.0, o), Forcing::cosine(o)}) {
    Timer t;
    const SeriesSolution s = solve_linear(g, 0.0, o, 1.0, 1e-12);
    const double dev = holder_limit_check(s, g);
    const double x = 1e-3;
    c.add("C12.g=" + g.label, 12, "(u(x)-u0)/x^b at x=1e-3 within 2% of the Holder limit",
          holder_limit(1.0, o), (s(x) - s.u0()) / std::pow(x, o.beta()), dev, 0.02, t.seconds());
  }
}

void criterion13(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const double b = o.beta();
  const std::size_t n = c.mc(1e6, 20000.0);
  const std::vector<double> pos = sample_first_resurrections(1.0, o, n, c.rng(13));
  constexpr int kBins = 50;
  std::vector<double> counts(kBins, 0.0);
  for (double p : pos) counts[std::min(kBins - 1, static_cast<int>(p * kBins))] += 1.0;
  double stat = 0.0;
  for (int i = 0; i < kBins; ++i) {
    const double lo = static_cast<double>(i) / kBins, hi = static_cast<double>(i + 1) / kBins;
    const double prob = boost::math::ibeta(1.0 - b, b, hi) - boost::math::ibeta(1.0 - b, b, lo);
    const double e = prob * static_cast<double>(n);
    stat += (counts[i] - e) * (counts[i] - e) / e;
  }
  const double crit = boost::math::quantile(boost::math::chi_squared(kBins - 1), 0.99);
  c.add("C13.chi2", 13,
        "chi-square (1%, 50 bins) of simulated first-resurrection positions against k1(1,.)", crit,
        stat, stat, crit, t.seconds(), "n " + std::to_string(n) + ", jump-resolved subordinator");

  Timer t2;
  const McEstimate m = first_resurrection_mean(1.0, o, 1e-5, c.mc(2000.0, 200.0), c.rng(131));
  c.add("C13.path_mean", 13, "step-simulator first-resurrection mean (h=1e-5) covers x(1-beta)",
        1.0 - b, m.estimate, std::abs(m.estimate - (1.0 - b)), 4.0 * m.std_error, t2.seconds(),
        fmt("se %.3e", m.std_error));
}

void criterion14(Ctx& c) {
  Timer t;
  const FracOrder o(c.cfg.beta);
  const std::size_t n = c.mc(1e6, 20000.0);
  RngStream rng = c.rng(14);
  std::vector<double> s(n);
  for (auto& v : s) v = sample_stable(rng, o);
  const double secs = t.seconds();
  for (double k : {0.5, 1.0, 2.0}) {
    double sum = 0.0, sq = 0.0;
    for (double v : s) {
      const double e = std::exp(-k * v);
      sum += e;
      sq += e * e;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / (n - 1.0));
    const double want = std::exp(-std::pow(k, o.beta()));
    c.add("C14.k=" + fmt("%g", k), 14, "empirical Laplace transform of S1 within 4 SE of e^{-k^b}",
          want, mean, std::abs(mean - want), 4.0 * se, secs, fmt("se %.3e", se));
  }
}

void criterion15(Ctx& c) {
  const FracOrder o(c.cfg.beta);
  const double b = o.beta();
  {
    Timer t;
    std::mt19937_64 gen(c.cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20; ++i) {
      const double xs = 0.2 + 0.7 * unif(gen);
      const double A = 4.0 * unif(gen) - 2.0, a = 0.2 + 3.0 * unif(gen), e = 2.0 * unif(gen),
                   q = 2.0 * unif(gen);
      // Strict maximum at xs over [0, xs]: the odd cubic term is <= 0 there.
      const SmoothFn u(
          [=](double x) {
            const double d = x - xs;
            return A - a * d * d + e * d * d * d - q * d * d * d * d;
          },
          [=](double x) {
            const double d = x - xs;
            return -2.0 * a * d + 3.0 * e * d * d - 4.0 * q * d * d * d;
          },
          1.0);
      worst = std::min(worst, censored_derivative(u, o, xs));
    }
    c.add("C15.max_principle", 15, "D^b u(x*) >= -1e-9 at an interior maximum, 20 random u", 0.0,
          worst, std::max(0.0, -worst), 1e-9, t.seconds());
  }
  {
    Timer t;
    double worst = 0.0;
    for (double a : {0.5, 1.5}) {
      for (double sc : {0.5, 2.0, 10.0}) {
        const double x = 0.8;
        const SmoothFn u = SmoothFn::monomial(a, 1.0, 2.0);
        const SmoothFn v([=](double y) { return std::pow(y / sc, a); },
                         [=](double y) { return a * std::pow(y / sc, a - 1.0) / sc; }, 1.0);
        const double lhs = censored_derivative(v, o, x);
        const double rhs = std::pow(sc, -b) * censored_derivative(u, o, x / sc);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
    }
    c.add("C15.scaling", 15, "D^b[u(./c)](x) = c^-b (D^b u)(x/c), c in {0.5,2,10}", 0.0, worst, worst,
          1e-7, t.seconds());
  }
  {
    Timer t;
    const FracOrder ob(0.3), og(0.6);
    const double a = 2.0;
    const double lhs = c_coeff(a - 0.6, ob) * c_coeff(a, og);
    const double rhs = c_coeff(a - 0.3, og) * c_coeff(a, ob);
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    c.add("C15.non_semigroup", 15, "C(a-g,b)C(a,g) != C(a-b,g)C(a,b) for b=0.3, g=0.6, a=2 (rel > 1e-3)",
          rhs, lhs, 1e-3 / rel, 1.0, t.seconds(), fmt("relative difference %.4e", rel));
  }
  {
    Timer t;
    int raised = 0;
    try {
      const GridFunction flat =
          GridFunction::sample([](double) { return 1.0; }, 1.0, Envelope{1.0, 0.0});
      neumann_sum(flat, o, 1e-8);
    } catch (const DivergenceError&) {
      ++raised;
    }
    try {
      Forcing g = Forcing::power(-b, 1.0, o);  // |x^b g| = x^0
      solve_linear(g, 0.0, o, 1.0, 1e-8);
    } catch (const DivergenceError&) {
      ++raised;
    }
    c.add("C15.divergence", 15, "alpha = 0 envelopes raise a divergence error", 2.0, raised,
          2.0 - raised, 0.5, t.seconds());
  }
  {
    Timer t;
    const int saved = thread_cap();
    const std::size_t n = c.mc(20000.0);
    set_thread_cap(1);
    const McEstimate a = estimate_lifetime(1.0, o, n, 40, c.rng(151));
    const McEstimate a2 = estimate_lifetime(1.0, o, n, 40, c.rng(151));
    set_thread_cap(3);
    const McEstimate a3 = estimate_lifetime(1.0, o, n, 40, c.rng(151));
    const PathLifetimeEstimate p1 = estimate_path_lifetime(1.0, o, 1e-3, 1e-2, 64, c.rng(152));
    set_thread_cap(1);
    const PathLifetimeEstimate p2 = estimate_path_lifetime(1.0, o, 1e-3, 1e-2, 64, c.rng(152));
    set_thread_cap(saved);
    auto same = [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; };
    const int mismatches = !same(a.estimate, a2.estimate) + !same(a.std_error, a2.std_error) +
                           !same(a.estimate, a3.estimate) +
                           !same(p1.lifetime.estimate, p2.lifetime.estimate);
    c.add("C15.determinism", 15, "seeded runs are bit-identical across reruns and thread counts", 0.0,
          mismatches, mismatches, 0.5, t.seconds());
  }
}

using CriterionFn = void (*)(Ctx&);
constexpr CriterionFn kCriteria[] = {criterion1,  criterion2,  criterion3,  criterion4,  criterion5,
                                     criterion6,  criterion7,  criterion8,  criterion9,  criterion10,
                                     criterion11, criterion12, criterion13, criterion14, criterion15};

void run_one(int k, const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  Ctx ctx{cfg, out};
  try {
    kCriteria[k - 1](ctx);
  } catch (const std::exception& e) {
    CheckResult r;
    r.id = "C" + std::string(k < 10 ? "0" : "") + std::to_string(k) + ".error";
    r.criterion = k;
    r.description = "criterion raised an exception";
    r.error = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.note = e.what();
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<CheckResult> run_criterion(int criterion, const VerifyConfig& config) {
  if (criterion < 1 || criterion > 15) throw UsageError("criterion must be in 1..15");
  FracOrder check(config.beta);  // validates beta
  (void)check;
  std::vector<CheckResult> out;
  run_one(criterion, config, out);
  return out;
}

std::vector<CheckResult> run_verification(const VerifyConfig& config,
                                          const std::function<void(const CheckResult&)>& on_result) {
  FracOrder check(config.beta);
  (void)check;
  if (!(config.tol_scale >= 0.0)) throw UsageError("tol_scale must be >= 0");
  if (!(config.mc_scale > 0.0)) throw UsageError("mc_scale must be > 0");
  std::vector<CheckResult> all;
  for (int k = 1; k <= 15; ++k) {
    std::vector<CheckResult> part;
    run_one(k, config, part);
    for (auto& r : part) {
      if (on_result) on_result(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace cenfrac
