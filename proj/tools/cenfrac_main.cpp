#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cenfrac/errors.hpp"
#include "cenfrac/ivp_solver.hpp"
#include "cenfrac/parallel.hpp"
#include "cenfrac/rl_calculus.hpp"
#include "cenfrac/special_functions.hpp"
#include "cenfrac/stochastic.hpp"
#include "cenfrac/verify.hpp"

namespace {

using cenfrac::UsageError;
using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Common {
  double beta = 0.5;
  double T = 1.0;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  std::string output = "csv";
  int threads = 0;
  double env_M = -1.0;
  double env_alpha = -1.0;
};

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json extra = Json::object();
};

void emit(const Table& t, const Common& c) {
  if (c.output == "json") {
    Json doc;
    doc["command"] = t.command;
    Json meta;
    meta["beta"] = c.beta;
    meta["seed"] = c.seed;
    meta["tol"] = c.tol;
    meta["version"] = kVersion;
    for (auto it = t.extra.begin(); it != t.extra.end(); ++it) meta[it.key()] = it.value();
    doc["metadata"] = meta;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      Json row;
      for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
      rows.push_back(row);
    }
    doc["rows"] = rows;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << t.columns[i];
  std::cout << "\n";
  char buf[64];
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      std::cout << (i ? "," : "") << buf;
    }
    std::cout << "\n";
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

cenfrac::FracOrder make_order(const Common& c) {
  require(c.beta > 0.0 && c.beta < 1.0, "--beta must lie in (0,1)");
  return cenfrac::FracOrder(c.beta);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot read a number from '" + s + "' in " + what);
  }
}

// const:c | pow:alpha[:coef] | cos | zero | table:<path>
cenfrac::Forcing parse_forcing(const std::string& spec, const cenfrac::FracOrder& order,
                               const Common& c) {
  const auto parts = split(spec, ':');
  require(!parts.empty(), "empty forcing spec");
  const std::string& kind = parts[0];
  if (kind == "const" && parts.size() == 2) {
    return cenfrac::Forcing::constant(to_number(parts[1], "--g"), order);
  }
  if (kind == "pow" && (parts.size() == 2 || parts.size() == 3)) {
    const double a = to_number(parts[1], "--g");
    const double coef = parts.size() == 3 ? to_number(parts[2], "--g") : 1.0;
    return cenfrac::Forcing::power(a, coef, order);
  }
  if (kind == "cos" && parts.size() == 1) return cenfrac::Forcing::cosine(order);
  if (kind == "zero" && parts.size() == 1) return cenfrac::Forcing::zero();
  if (kind == "table" && parts.size() >= 2) {
    const std::string path = spec.substr(6);
    require(c.env_M >= 0.0 && c.env_alpha >= 0.0, "table forcing needs --env-M and --env-alpha");
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open forcing table '" + path + "'");
    std::vector<double> xs, gs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split(line, ',');
      require(cells.size() == 2, "forcing table rows must read x,g");
      // Tolerate a header row.
      if (xs.empty() && gs.empty()) {
        try {
          (void)std::stod(cells[0]);
        } catch (const std::exception&) {
          continue;
        }
      }
      xs.push_back(to_number(cells[0], path));
      gs.push_back(to_number(cells[1], path));
    }
    auto g = cenfrac::Forcing::table(std::move(xs), std::move(gs), {c.env_M, c.env_alpha});
    g.check_envelope(c.T, order);
    return g;
  }
  throw UsageError("unknown forcing spec '" + spec + "' (const:c, pow:alpha[:coef], cos, zero, table:path)");
}

std::vector<double> grid_points(double T, int n) {
  require(n >= 1, "--points must be >= 1");
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = T * (i + 1) / n;
  return xs;
}

// f(x,y) specs with derived Lipschitz constant and sup on the band.
cenfrac::NonlinearSpec parse_nonlinear(const std::string& spec, double u0, double Y,
                                       std::optional<double> L, std::optional<double> M) {
  const auto parts = split(spec, ':');
  require(!parts.empty(), "empty --f spec");
  const double lo = u0 - Y, hi = u0 + Y;
  cenfrac::NonlinearSpec s{{}, 0.0, Y, 0.0, u0};
  if (parts[0] == "lin" && (parts.size() == 2 || parts.size() == 3)) {
    const double lam = to_number(parts[1], "--f");
    const double c0 = parts.size() == 3 ? to_number(parts[2], "--f") : 0.0;
    s.f = [lam, c0](double, double y) { return lam * y + c0; };
    s.lipschitz_L = std::abs(lam);
    s.sup_M = std::abs(lam) * std::max(std::abs(lo), std::abs(hi)) + std::abs(c0);
  } else if (parts[0] == "sin" && parts.size() == 2) {
    const double a = to_number(parts[1], "--f");
    s.f = [a](double, double y) { return a * std::sin(y); };
    s.lipschitz_L = std::abs(a);
    s.sup_M = std::abs(a);
  } else if (parts[0] == "logistic" && parts.size() == 2) {
    const double r = to_number(parts[1], "--f");
    s.f = [r](double, double y) { return r * y * (1.0 - y); };
    s.lipschitz_L = std::abs(r) * std::max(std::abs(1.0 - 2.0 * lo), std::abs(1.0 - 2.0 * hi));
    double sup = std::max(std::abs(lo * (1.0 - lo)), std::abs(hi * (1.0 - hi)));
    if (lo <= 0.5 && 0.5 <= hi) sup = std::max(sup, 0.25);
    s.sup_M = std::abs(r) * sup;
  } else {
    throw UsageError("unknown --f spec '" + spec + "' (lin:lambda[:c], sin:a, logistic:r)");
  }
  if (L) s.lipschitz_L = *L;
  if (M) s.sup_M = *M;
  // A zero right-hand side still needs positive certificates.
  if (s.lipschitz_L == 0.0) s.lipschitz_L = 1e-300;
  if (s.sup_M == 0.0) s.sup_M = 1e-300;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Censored fractional derivative toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with the same fields as the flags (flags win)");

  Common c;
  app.add_option("--beta", c.beta, "fractional order in (0,1)")->capture_default_str();
  app.add_option("--T", c.T, "domain end")->capture_default_str();
  app.add_option("--tol", c.tol, "truncation tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--output", c.output, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", c.threads, "worker cap (default: CENFRAC_THREADS or all cores)");
  app.add_option("--env-M", c.env_M, "envelope M for table forcing");
  app.add_option("--env-alpha", c.env_alpha, "envelope alpha for table forcing");

  // derivative
  auto* deriv = app.add_subcommand("derivative", "censored and R-L derivatives of a monomial or constant");
  std::optional<double> monomial, constant;
  std::string route = "jump_integral";
  int points = 8;
  deriv->add_option("--monomial", monomial, "u = x^alpha");
  deriv->add_option("--constant", constant, "u = c");
  deriv->add_option("--route", route, "definition or jump_integral")->capture_default_str();
  deriv->add_option("--points", points, "grid points x = T i/n")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "strong solution of D^b u = g, u(0) = u0");
  std::string g_spec = "const:1";
  double u0 = 0.0;
  int out_points = 10;
  solve->add_option("--g", g_spec, "forcing: const:c, pow:alpha[:coef], cos, zero, table:path")
      ->capture_default_str();
  solve->add_option("--u0", u0, "initial value")->capture_default_str();
  solve->add_option("--points", out_points, "output points x = T i/n")->capture_default_str();

  // eigen
  auto* eigen = app.add_subcommand("eigen", "eigen-series solution of D^b u = lambda u");
  double lambda = 1.0, eig_u0 = 1.0;
  eigen->add_option("--lambda", lambda, "eigenvalue")->capture_default_str();
  eigen->add_option("--u0", eig_u0, "initial value")->capture_default_str();
  eigen->add_option("--points", out_points, "output points x = T i/n")->capture_default_str();

  // nonlinear
  auto* nonlin = app.add_subcommand("nonlinear", "Picard solution of D^b u = f(x,u) on [0,T1]");
  std::string f_spec = "lin:1";
  double nl_u0 = 1.0, band_Y = 1.0;
  std::optional<double> lip_L, sup_M;
  int max_iters = 500;
  nonlin->add_option("--f", f_spec, "lin:lambda[:c], sin:a, logistic:r")->capture_default_str();
  nonlin->add_option("--u0", nl_u0, "initial value")->capture_default_str();
  nonlin->add_option("--Y", band_Y, "band half-width")->capture_default_str();
  nonlin->add_option("--L", lip_L, "Lipschitz constant (derived when omitted)");
  nonlin->add_option("--M", sup_M, "sup of |f| on the band (derived when omitted)");
  nonlin->add_option("--max-iters", max_iters, "Picard iteration cap")->capture_default_str();
  nonlin->add_option("--points", out_points, "output points x = T1 i/n")->capture_default_str();

  // lifetime
  auto* life = app.add_subcommand("lifetime", "Rao-Blackwell estimate of the mean lifetime");
  double x0 = 1.0;
  long n_samples = 100000;
  int depth = 60;
  life->add_option("--x", x0, "start point")->capture_default_str();
  life->add_option("--n", n_samples, "number of chains")->capture_default_str();
  life->add_option("--depth", depth, "chain depth")->capture_default_str();

  // simulate
  auto* sim = app.add_subcommand("simulate", "censored subordinator paths");
  sim->set_help_flag("--help", "Print this help message and exit");
  double step_h = 1e-4;
  std::optional<double> threshold;
  long n_paths = 10;
  sim->add_option("--x", x0, "start point")->capture_default_str();
  sim->add_option("--h", step_h, "time step")->capture_default_str();
  sim->add_option("--threshold", threshold, "stop threshold (default x 10^(-1.5/beta))");
  sim->add_option("--n", n_paths, "number of paths")->capture_default_str();

  // fk
  auto* fk = app.add_subcommand("fk", "Feynman-Kac path average against the series solution");
  fk->set_help_flag("--help", "Print this help message and exit");
  long fk_paths = 10000;
  fk->add_option("--g", g_spec, "forcing spec")->capture_default_str();
  fk->add_option("--x", x0, "start point")->capture_default_str();
  fk->add_option("--h", step_h, "time step")->capture_default_str();
  fk->add_option("--threshold", threshold, "stop threshold (default x 10^(-1.5/beta))");
  fk->add_option("--n", fk_paths, "number of paths")->capture_default_str();

  // compare-caputo
  auto* cap = app.add_subcommand("compare-caputo", "censored solution next to the Caputo solution u0 + J^b g");
  cap->add_option("--g", g_spec, "forcing spec")->capture_default_str();
  cap->add_option("--u0", u0, "initial value")->capture_default_str();
  cap->add_option("--points", out_points, "output points x = T i/n")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "run the identity suite; exit 0 iff every check passes");
  double tol_scale = 1.0, mc_scale = 1.0;
  std::optional<int> only;
  ver->add_option("--tol-scale", tol_scale, "multiplies every tolerance (0 forces failure)")
      ->capture_default_str();
  ver->add_option("--mc-scale", mc_scale, "multiplies Monte Carlo sample sizes")->capture_default_str();
  ver->add_option("--criterion", only, "run one criterion (1..15)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR[usage]: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c.threads < 0) throw UsageError("--threads must be >= 0");
    if (c.threads > 0) cenfrac::set_thread_cap(c.threads);
    require(c.T > 0.0 && std::isfinite(c.T), "--T must be positive");
    require(c.tol > 0.0, "--tol must be positive");
    const cenfrac::FracOrder order = make_order(c);
    Table t;

    if (*deriv) {
      require(!(monomial && constant), "give either --monomial or --constant");
      require(!monomial || *monomial > 0.0, "--monomial must be > 0");
      const auto r = cenfrac::parse_route(route);
      const bool is_const = constant.has_value();
      const double a = monomial.value_or(0.5);
      const auto u = is_const ? cenfrac::SmoothFn::constant(*constant, c.T)
                              : cenfrac::SmoothFn::monomial(a, 1.0, c.T);
      t.command = "derivative";
      t.columns = {"x", "D_beta", "RL", "ratio", "closed_form"};
      for (double x : grid_points(c.T, points)) {
        const double d = cenfrac::censored_derivative(u, order, x, r);
        const double rl = cenfrac::rl_derivative(u, order, x);
        const double closed = is_const ? 0.0 : cenfrac::monomial_censored_derivative(a, order, x);
        t.rows.push_back({x, d, rl, rl != 0.0 ? d / rl : 0.0, closed});
      }
      t.extra["route"] = route;
      t.extra["T"] = c.T;
    } else if (*solve || *cap) {
      const auto g = parse_forcing(g_spec, order, c);
      const auto s = cenfrac::solve_linear(g, u0, order, c.T, c.tol);
      if (*solve) {
        t.command = "solve";
        t.columns = {"x", "u"};
        t.rows.push_back({0.0, s(0.0)});
        for (double x : grid_points(c.T, out_points)) t.rows.push_back({x, s(x)});
      } else {
        t.command = "compare-caputo";
        t.columns = {"x", "censored", "caputo", "ratio"};
        for (double x : grid_points(c.T, out_points)) {
          const double cens = s(x);
          const double capu = u0 + cenfrac::rl_integral(g, order, x);
          t.rows.push_back({x, cens, capu, (cens - u0) / (capu - u0)});
        }
      }
      t.extra["g"] = g_spec;
      t.extra["u0"] = u0;
      t.extra["T"] = c.T;
      t.extra["depth"] = s.depth();
      t.extra["tail_bound"] = s.tail_bound();
    } else if (*eigen) {
      const auto s = cenfrac::solve_eigen(lambda, eig_u0, order, c.T, c.tol);
      t.command = "eigen";
      t.columns = {"x", "u"};
      t.rows.push_back({0.0, s(0.0)});
      for (double x : grid_points(c.T, out_points)) t.rows.push_back({x, s(x)});
      t.extra["lambda"] = lambda;
      t.extra["u0"] = eig_u0;
      t.extra["T"] = c.T;
      t.extra["depth"] = s.depth();
      t.extra["tail_bound"] = s.tail_bound();
    } else if (*nonlin) {
      require(band_Y > 0.0, "--Y must be positive");
      const auto spec = parse_nonlinear(f_spec, nl_u0, band_Y, lip_L, sup_M);
      const auto r = cenfrac::solve_nonlinear(spec, order, c.T, c.tol, max_iters);
      t.command = "nonlinear";
      t.columns = {"x", "u"};
      t.rows.push_back({0.0, r.solution(0.0)});
      for (double x : grid_points(r.horizon, out_points)) t.rows.push_back({x, r.solution(x)});
      t.extra["f"] = f_spec;
      t.extra["T1"] = r.horizon;
      t.extra["iterations"] = r.iterations;
      t.extra["L"] = spec.lipschitz_L;
      t.extra["M"] = spec.sup_M;
      t.extra["Y"] = spec.band_Y;
    } else if (*life) {
      require(x0 > 0.0, "--x must be positive");
      require(n_samples >= 1, "--n must be >= 1");
      require(depth >= 0, "--depth must be >= 0");
      const auto e = cenfrac::estimate_lifetime(x0, order, static_cast<std::size_t>(n_samples), depth,
                                                cenfrac::RngStream(c.seed, 0));
      t.command = "lifetime";
      t.columns = {"x", "estimate", "std_error", "tail_bound", "closed_form"};
      t.rows.push_back({x0, e.estimate, e.std_error, e.tail_bound, cenfrac::expected_lifetime(x0, order)});
      t.extra["n"] = n_samples;
      t.extra["depth"] = depth;
    } else if (*sim) {
      require(x0 > 0.0, "--x must be positive");
      require(step_h > 0.0, "--h must be positive");
      require(n_paths >= 1, "--n must be >= 1");
      const double thr = threshold.value_or(cenfrac::default_stop_threshold(x0, order));
      require(thr > 0.0, "--threshold must be positive");
      const cenfrac::RngStream root(c.seed, 0);
      t.command = "simulate";
      t.columns = {"path", "lifetime", "resurrections", "first_resurrection_time",
                   "first_resurrection_position"};
      for (long i = 0; i < n_paths; ++i) {
        cenfrac::RngStream rng = root.child(static_cast<std::uint64_t>(i));
        const auto p = cenfrac::simulate_censored_path(x0, order, step_h, thr, rng, 100000000, false);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({static_cast<double>(i), p.lifetime, static_cast<double>(p.resurrection_count),
                          p.resurrection_times.empty() ? nan : p.resurrection_times.front(),
                          p.resurrection_positions.empty() ? nan : p.resurrection_positions.front()});
      }
      t.extra["x"] = x0;
      t.extra["h"] = step_h;
      t.extra["threshold"] = thr;
      t.extra["closed_form_mean_lifetime"] = cenfrac::expected_lifetime(x0, order);
    } else if (*fk) {
      require(x0 > 0.0, "--x must be positive");
      require(step_h > 0.0, "--h must be positive");
      require(fk_paths >= 1, "--n must be >= 1");
      const auto g = parse_forcing(g_spec, order, c);
      const double thr = threshold.value_or(cenfrac::default_stop_threshold(x0, order));
      const auto e = cenfrac::estimate_feynman_kac(g, x0, order, static_cast<std::size_t>(fk_paths), step_h,
                                                   cenfrac::RngStream(c.seed, 0), thr);
      const double ref = cenfrac::solve_linear(g, 0.0, order, x0, c.tol)(x0);
      t.command = "fk";
      t.columns = {"x", "estimate", "std_error", "series_solution"};
      t.rows.push_back({x0, e.estimate, e.std_error, ref});
      t.extra["g"] = g_spec;
      t.extra["h"] = step_h;
      t.extra["threshold"] = thr;
      t.extra["n"] = fk_paths;
    } else if (*ver) {
      require(tol_scale >= 0.0, "--tol-scale must be >= 0");
      require(mc_scale > 0.0, "--mc-scale must be > 0");
      cenfrac::VerifyConfig cfg;
      cfg.beta = c.beta;
      cfg.tol_scale = tol_scale;
      cfg.mc_scale = mc_scale;
      cfg.seed = c.seed;
      const auto results = only ? cenfrac::run_criterion(*only, cfg) : cenfrac::run_verification(cfg);
      bool all = !results.empty();
      for (const auto& r : results) all = all && r.passed;
      if (c.output == "csv") {
        std::cout << "id,criterion,passed,target,achieved,error,tolerance\n";
        char buf[256];
        for (const auto& r : results) {
          std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g,%.17g,%.17g\n", r.id.c_str(), r.criterion,
                        r.passed ? 1 : 0, r.target, r.achieved, r.error, r.tolerance);
          std::cout << buf;
        }
      } else {
        Json doc;
        doc["command"] = "verify";
        doc["metadata"] = {{"beta", c.beta}, {"seed", c.seed},         {"tol_scale", tol_scale},
                           {"mc_scale", mc_scale}, {"version", kVersion}};
        Json checks = Json::array();
        for (const auto& r : results) {
          checks.push_back({{"id", r.id},
                            {"criterion", r.criterion},
                            {"description", r.description},
                            {"target", r.target},
                            {"achieved", r.achieved},
                            {"error", r.error},
                            {"tolerance", r.tolerance},
                            {"passed", r.passed},
                            {"note", r.note}});
        }
        doc["checks"] = checks;
        doc["passed"] = all;
        doc["n_checks"] = results.size();
        std::cout << doc.dump(2) << "\n";
      }
      return all ? 0 : 1;
    }
    emit(t, c);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "ERROR[" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const cenfrac::Error& e) {
    std::cerr << "ERROR[" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERROR[internal]: " << e.what() << "\n";
    return 1;
  }
}
