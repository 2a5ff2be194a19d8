#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cenfrac/errors.hpp"
#include "cenfrac/rl_calculus.hpp"
#include "cenfrac/special_functions.hpp"

namespace cenfrac {

/// Reproducible random stream: identical (seed, stream_index) give identical draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_; }

  /// Independent sub-stream, a pure function of (seed, stream_index, index).
  RngStream child(std::uint64_t index) const;

  /// Uniform on the open interval (0,1), 53 random bits.
  double uniform();
  double exponential();
  double normal();
  double gamma(double shape);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Beta(1−β, β) draw in (0,1).
double sample_beta_increment(RngStream& rng, const FracOrder& order);

enum class ChainStop { depth_cap, threshold };

struct ChainSample {
  double start_x;
  /// X_0 = x > X_1 > ... > 0; positions below the threshold are not kept.
  std::vector<double> positions;
  ChainStop stop_reason;
};

/// X_j = X_{j−1}·Z_j with Z_j ~ Beta(1−β, β); stops after depth_cap steps or
/// at the first X_j below threshold.
ChainSample sample_chain(double x, RngStream& rng, const FracOrder& order, int depth_cap,
                         double threshold = 0.0);

/// Monte Carlo result. tail_bound is a deterministic bias bound, 0 when none applies.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double tail_bound = 0.0;
  std::size_t samples = 0;
};

/// u(x) − u0 = Σ_j E[J^β g(X_j)], averaged over n_chains chains of depth depth_cap.
McEstimate estimate_series_solution(const Forcing& g, double x, const FracOrder& order,
                                    std::size_t n_chains, int depth_cap, const RngStream& rng);

/// Standard β-stable subordinator value S₁, E[e^{−kS₁}] = e^{−k^β}.
double sample_stable(RngStream& rng, const FracOrder& order);

/// E[τ∞(x)] via Σ_{j<depth_cap} X_j^β/Γ(1+β) per chain.
McEstimate estimate_lifetime(double x, const FracOrder& order, std::size_t n_chains, int depth_cap,
                             const RngStream& rng);

/// Closed form x^β/Γ(1+β)·βπ/(βπ − sin βπ).
double expected_lifetime(double x, const FracOrder& order);

struct PathSample {
  double step_h = 0.0;
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> resurrection_times;
  std::vector<double> resurrection_positions;
  long resurrection_count = 0;
  double lifetime = 0.0;
};

/// Thrown when a path has not reached the stop threshold after max_steps steps.
class RunawayPathError : public Error {
 public:
  RunawayPathError(const std::string& what, PathSample partial)
      : Error("runaway", what), partial_(std::move(partial)) {}
  const PathSample& partial() const noexcept { return partial_; }

 private:
  PathSample partial_;
};

/// x·10^{−1.5/β}: the remaining mean lifetime below it is at most 10^{−1.5} of E[τ∞(x)].
double default_stop_threshold(double x, const FracOrder& order);

/// Censored path with steps of length h and increments h^{1/β}S₁. A step that
/// would reach ≤ 0 is censored: the position is kept and the resurrection count
/// grows. Stops once the position is below stop_threshold. With record_steps
/// every step is stored, otherwise only the start, resurrections and the end.
PathSample simulate_censored_path(double x, const FracOrder& order, double step_h,
                                  double stop_threshold, RngStream& rng, long max_steps = 100000000,
                                  bool record_steps = true);

struct PathLifetimeEstimate {
  McEstimate lifetime;
  /// Same paths run with step 2h (increments are sums of two fine increments).
  McEstimate coarse_lifetime;
  /// Mean of (fine − coarse) per path, with its standard error.
  double shift = 0.0;
  double shift_std_error = 0.0;
  std::size_t runaway = 0;
  long max_steps_used = 0;
};

/// Mean lifetime of censored paths; tail_bound holds the threshold bias bound.
/// With coupled_halving the coarse step is 2h.
PathLifetimeEstimate estimate_path_lifetime(double x, const FracOrder& order, double step_h,
                                            double stop_threshold, std::size_t n_paths,
                                            const RngStream& rng, bool coupled_halving = false,
                                            long max_steps = 100000000);

/// E_x[∫₀^{τ∞} g(S^c_s) ds] by Σ g(position)·h along censored paths.
McEstimate estimate_feynman_kac(const Forcing& g, double x, const FracOrder& order,
                                std::size_t n_paths, double step_h, const RngStream& rng,
                                double stop_threshold = -1.0, long max_steps = 100000000);

/// Mean first-resurrection position of step-h censored paths.
McEstimate first_resurrection_mean(double x, const FracOrder& order, double step_h,
                                   std::size_t n_paths, const RngStream& rng);

/// First-resurrection positions from a jump-resolved subordinator: jumps above
/// jump_floor·x are compound Poisson, smaller ones are replaced by their mean drift.
std::vector<double> sample_first_resurrections(double x, const FracOrder& order, std::size_t n,
                                               const RngStream& rng, double jump_floor = 1e-5);

}  // namespace cenfrac
