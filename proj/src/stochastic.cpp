#include "cenfrac/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cenfrac/grid_function.hpp"
#include "cenfrac/parallel.hpp"

namespace cenfrac {

namespace {

constexpr std::size_t kBlock = 256;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Runs item(rng, i) for i < n; block b of kBlock items draws from root.child(b).
template <typename Item>
void for_each_blocked(std::size_t n, const RngStream& root, Item&& item) {
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    RngStream rng = root.child(b);
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) item(rng, i);
  });
}

McEstimate summarize(const std::vector<double>& v) {
  McEstimate out;
  out.samples = v.size();
  if (v.empty()) return out;
  double sum = 0.0;
  for (double s : v) sum += s;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double s : v) ss += (s - mean) * (s - mean);
  out.estimate = mean;
  out.std_error =
      v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))
                   : 0.0;
  return out;
}

void check_x(double x, const char* where) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(where) + ": x must be positive");
}

}  // namespace

// -------------------------------------------------------------- RngStream

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index), engine_(make_engine(seed, stream_index)) {}

RngStream RngStream::child(std::uint64_t index) const {
  return RngStream(seed_, splitmix64(splitmix64(stream_) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

double RngStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::normal() { return normal_(engine_); }

double RngStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

// ------------------------------------------------------------------ chains

double sample_beta_increment(RngStream& rng, const FracOrder& order) {
  const double b = order.beta();
  while (true) {
    const double g1 = rng.gamma(1.0 - b);
    const double g2 = rng.gamma(b);
    const double z = g1 / (g1 + g2);
    if (z > 0.0 && z < 1.0) return z;
  }
}

ChainSample sample_chain(double x, RngStream& rng, const FracOrder& order, int depth_cap,
                         double threshold) {
  check_x(x, "sample_chain");
  if (depth_cap < 0) throw DomainError("sample_chain: depth_cap must be >= 0");
  if (!(threshold >= 0.0)) throw DomainError("sample_chain: threshold must be >= 0");
  ChainSample c{x, {x}, ChainStop::depth_cap};
  double pos = x;
  for (int j = 1; j <= depth_cap; ++j) {
    pos *= sample_beta_increment(rng, order);
    if (pos < threshold || !(pos > 0.0)) {
      c.stop_reason = ChainStop::threshold;
      return c;
    }
    c.positions.push_back(pos);
  }
  return c;
}

McEstimate estimate_series_solution(const Forcing& g, double x, const FracOrder& order,
                                    std::size_t n_chains, int depth_cap, const RngStream& rng) {
  check_x(x, "estimate_series_solution");
  if (n_chains < 1) throw DomainError("estimate_series_solution: need at least one chain");
  if (depth_cap < 0) throw DomainError("estimate_series_solution: depth_cap must be >= 0");
  const Envelope env = g.certified(order);
  if (g.is_zero()) return McEstimate{0.0, 0.0, 0.0, n_chains};

  // J^β g tabulated once on (0,x] in the cusp variable of Γ(1−β)x^β g.
  const double M = order.gamma_1mb() * env.M;
  const GridSpec grid(x, cusp_exponent(Envelope{M, env.alpha}), 48);
  Eigen::VectorXd full(grid.order() + 1);
  full(0) = 0.0;
  for (int k = 1; k <= grid.order(); ++k) full(k) = rl_integral(g, order, grid.x_nodes()(k));
  const double j0 = full(grid.order());

  std::vector<double> sums(n_chains);
  for_each_blocked(n_chains, rng, [&](RngStream& r, std::size_t i) {
    double s = j0;
    double pos = x;
    for (int j = 1; j <= depth_cap; ++j) {
      pos *= sample_beta_increment(r, order);
      s += barycentric_eval<double>(grid.w_nodes(), grid.bary_weights(), full, grid.to_w(pos));
    }
    sums[i] = s;
  });
  McEstimate out = summarize(sums);
  const double rr = rho(env.alpha, order);
  out.tail_bound = M * std::pow(x, env.alpha) * std::pow(rr, depth_cap + 2) / (1.0 - rr);
  return out;
}

// ------------------------------------------------------------------ stable

double sample_stable(RngStream& rng, const FracOrder& order) {
  const double b = order.beta();
  if (b == 0.5) {
    // Lévy law: 1/(2N²).
    const double z = rng.normal();
    return 0.5 / (z * z);
  }
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  return std::sin(b * u) / std::pow(std::sin(u), 1.0 / b) *
         std::pow(std::sin((1.0 - b) * u) / e, (1.0 - b) / b);
}

// ---------------------------------------------------------------- lifetime

double expected_lifetime(double x, const FracOrder& order) {
  const double bp = order.beta() * std::numbers::pi;
  return std::pow(x, order.beta()) / order.gamma_1pb() * bp / (bp - std::sin(bp));
}

McEstimate estimate_lifetime(double x, const FracOrder& order, std::size_t n_chains, int depth_cap,
                             const RngStream& rng) {
  check_x(x, "estimate_lifetime");
  if (n_chains < 1) throw DomainError("estimate_lifetime: need at least one chain");
  if (depth_cap < 0) throw DomainError("estimate_lifetime: depth_cap must be >= 0");
  const double b = order.beta();
  const double r = 1.0 / (order.gamma_1pb() * order.gamma_1mb());
  const double scale = std::pow(x, b) / order.gamma_1pb();
  std::vector<double> sums(n_chains, 0.0);
  if (depth_cap > 0) {
    for_each_blocked(n_chains, rng, [&](RngStream& rs, std::size_t i) {
      double pos = x;
      double s = std::pow(pos, b);
      for (int j = 1; j < depth_cap; ++j) {
        pos *= sample_beta_increment(rs, order);
        s += std::pow(pos, b);
      }
      sums[i] = s / order.gamma_1pb();
    });
  }
  McEstimate out = summarize(sums);
  out.tail_bound = scale * std::pow(r, depth_cap) / (1.0 - r);
  return out;
}

// ------------------------------------------------------------------- paths

double default_stop_threshold(double x, const FracOrder& order) {
  return x * std::pow(10.0, -1.5 / order.beta());
}

namespace {

void check_path_args(double x, double step_h, double stop_threshold) {
  check_x(x, "censored path");
  if (!(step_h > 0.0)) throw DomainError("censored path: step_h must be positive");
  if (!(stop_threshold > 0.0)) throw DomainError("censored path: stop_threshold must be positive");
}

struct PathState {
  double pos;
  long steps = 0;
  long resurrections = 0;
  double integral = 0.0;
  bool done = false;
};

// One step with increment `inc`; returns true when the path has terminated.
inline bool advance(PathState& s, double inc, double threshold) {
  ++s.steps;
  if (s.pos - inc > 0.0) {
    s.pos -= inc;
  } else {
    ++s.resurrections;
  }
  s.done = s.pos < threshold;
  return s.done;
}

}  // namespace

PathSample simulate_censored_path(double x, const FracOrder& order, double step_h,
                                  double stop_threshold, RngStream& rng, long max_steps,
                                  bool record_steps) {
  check_path_args(x, step_h, stop_threshold);
  PathSample p;
  p.step_h = step_h;
  p.times.push_back(0.0);
  p.positions.push_back(x);
  if (stop_threshold >= x) return p;
  const double scale = std::pow(step_h, 1.0 / order.beta());
  PathState s{x};
  while (!s.done) {
    if (s.steps >= max_steps) {
      p.lifetime = static_cast<double>(s.steps) * step_h;
      p.resurrection_count = s.resurrections;
      throw RunawayPathError("censored path: no termination within " + std::to_string(max_steps) +
                                 " steps",
                             std::move(p));
    }
    const long before = s.resurrections;
    advance(s, scale * sample_stable(rng, order), stop_threshold);
    const double t = static_cast<double>(s.steps) * step_h;
    if (s.resurrections != before) {
      p.resurrection_times.push_back(t);
      p.resurrection_positions.push_back(s.pos);
    }
    if (record_steps || s.done) {
      p.times.push_back(t);
      p.positions.push_back(s.pos);
    }
  }
  p.resurrection_count = s.resurrections;
  p.lifetime = static_cast<double>(s.steps) * step_h;
  return p;
}

PathLifetimeEstimate estimate_path_lifetime(double x, const FracOrder& order, double step_h,
                                            double stop_threshold, std::size_t n_paths,
                                            const RngStream& rng, bool coupled_halving,
                                            long max_steps) {
  check_path_args(x, step_h, stop_threshold);
  if (n_paths < 1) throw DomainError("estimate_path_lifetime: need at least one path");
  const double b = order.beta();
  const double scale = std::pow(step_h, 1.0 / b);
  std::vector<double> fine(n_paths), coarse(coupled_halving ? n_paths : 0);
  std::vector<char> runaway(n_paths, 0);
  std::vector<long> used(n_paths, 0);

  for_each_blocked(n_paths, rng, [&](RngStream& r, std::size_t i) {
    PathState f{x}, c{x};
    f.done = stop_threshold >= x;
    c.done = f.done || !coupled_halving;
    while (!(f.done && c.done)) {
      if (f.steps >= max_steps) {
        runaway[i] = 1;
        break;
      }
      const double i1 = scale * sample_stable(r, order);
      if (!f.done) advance(f, i1, stop_threshold);
      if (coupled_halving) {
        const double i2 = scale * sample_stable(r, order);
        if (!f.done) advance(f, i2, stop_threshold);
        if (!c.done) advance(c, i1 + i2, stop_threshold);
      }
    }
    fine[i] = static_cast<double>(f.steps) * step_h;
    if (coupled_halving) coarse[i] = static_cast<double>(c.steps) * 2.0 * step_h;
    used[i] = f.steps;
  });

  PathLifetimeEstimate out;
  out.lifetime = summarize(fine);
  out.lifetime.tail_bound = expected_lifetime(stop_threshold, order);
  for (std::size_t i = 0; i < n_paths; ++i) {
    out.runaway += runaway[i] ? 1 : 0;
    out.max_steps_used = std::max(out.max_steps_used, used[i]);
  }
  if (coupled_halving) {
    out.coarse_lifetime = summarize(coarse);
    out.coarse_lifetime.tail_bound = out.lifetime.tail_bound;
    std::vector<double> diff(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) diff[i] = fine[i] - coarse[i];
    const McEstimate d = summarize(diff);
    out.shift = d.estimate;
    out.shift_std_error = d.std_error;
  }
  return out;
}

McEstimate estimate_feynman_kac(const Forcing& g, double x, const FracOrder& order,
                                std::size_t n_paths, double step_h, const RngStream& rng,
                                double stop_threshold, long max_steps) {
  if (stop_threshold < 0.0) stop_threshold = default_stop_threshold(x, order);
  check_path_args(x, step_h, stop_threshold);
  if (n_paths < 1) throw DomainError("estimate_feynman_kac: need at least one path");
  if (g.is_zero()) return McEstimate{0.0, 0.0, 0.0, n_paths};
  const double scale = std::pow(step_h, 1.0 / order.beta());
  std::vector<double> sums(n_paths);
  std::vector<char> runaway(n_paths, 0);
  for_each_blocked(n_paths, rng, [&](RngStream& r, std::size_t i) {
    PathState s{x};
    s.done = stop_threshold >= x;
    while (!s.done) {
      if (s.steps >= max_steps) {
        runaway[i] = 1;
        break;
      }
      s.integral += g(s.pos) * step_h;
      advance(s, scale * sample_stable(r, order), stop_threshold);
    }
    sums[i] = s.integral;
  });
  for (char c : runaway) {
    if (c) throw RunawayPathError("estimate_feynman_kac: a path did not terminate", PathSample{});
  }
  McEstimate out = summarize(sums);
  // Remaining contribution below the threshold, when g is bounded there.
  if (g.sup_norm) out.tail_bound = *g.sup_norm * expected_lifetime(stop_threshold, order);
  return out;
}

McEstimate first_resurrection_mean(double x, const FracOrder& order, double step_h,
                                   std::size_t n_paths, const RngStream& rng) {
  check_x(x, "first_resurrection_mean");
  if (!(step_h > 0.0)) throw DomainError("first_resurrection_mean: step_h must be positive");
  const double scale = std::pow(step_h, 1.0 / order.beta());
  std::vector<double> pos(n_paths);
  for_each_blocked(n_paths, rng, [&](RngStream& r, std::size_t i) {
    double p = x;
    while (true) {
      const double inc = scale * sample_stable(r, order);
      if (p - inc <= 0.0) break;
      p -= inc;
    }
    pos[i] = p;
  });
  return summarize(pos);
}

std::vector<double> sample_first_resurrections(double x, const FracOrder& order, std::size_t n,
                                               const RngStream& rng, double jump_floor) {
  check_x(x, "sample_first_resurrections");
  if (!(jump_floor > 0.0) || !(jump_floor < 1.0)) {
    throw DomainError("sample_first_resurrections: jump_floor must lie in (0,1)");
  }
  const double b = order.beta();
  const double delta = jump_floor * x;
  // Lévy measure β/Γ(1−β) s^{−1−β} ds.
  const double rate = std::pow(delta, -b) / order.gamma_1mb();
  const double drift = b / (order.gamma_1mb() * (1.0 - b)) * std::pow(delta, 1.0 - b);
  std::vector<double> out(n);
  for_each_blocked(n, rng, [&](RngStream& r, std::size_t i) {
    double p = x;
    while (true) {
      p -= drift * r.exponential() / rate;
      if (p <= 0.0) {
        p = 0.0;  // crossed by drift; position ~ 0
        break;
      }
      const double jump = delta * std::pow(r.uniform(), -1.0 / b);
      if (jump >= p) break;
      p -= jump;
    }
    out[i] = p;
  });
  return out;
}

}  // namespace cenfrac
