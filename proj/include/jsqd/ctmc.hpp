#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "jsqd/choice.hpp"
#include "jsqd/fixed_point.hpp"
#include "jsqd/occupancy.hpp"
#include "jsqd/path.hpp"

namespace jsqd {

/// Per-level event counts and integrated rates, level i stored at [i-1].
/// Arrivals at level i raise the count of queues with >= i jobs; departures
/// at level i lower it.
struct EventLog {
  std::vector<std::int64_t> arrivals;
  std::vector<std::int64_t> departures;
  std::vector<double> arrival_compensator;    // int_0^t n lambda (beta(g_{i-1}) - beta(g_i)) ds
  std::vector<double> departure_compensator;  // int_0^t n (g_i - g_{i+1}) ds
  std::int64_t total_arrivals = 0;
  std::int64_t total_departures = 0;
};

/// Martingale diagnostics on the output grid, coordinates 1..I.
struct MartingaleDiag {
  SampledPath martingale;         // M_i = (A_i - D_i)/n - compensator difference / n
  SampledPath quadratic_variation;  // <M_i>_t
  std::vector<double> norm_sq;    // sum over all levels of M_i(t)^2, per grid point
  /// max over grid points and levels of |n g_i(t) - n g_i(0) - A_i(t) + D_i(t)|.
  std::int64_t gad_residual = 0;
  /// max over grid points of |jobs(t) - jobs(0) - arrivals(t) + departures(t)|.
  std::int64_t conservation_residual = 0;
};

struct CtmcRun {
  SampledPath g;              // coordinates 1..I
  std::vector<double> jobs;   // total jobs in system at each grid point (integer valued)
  Occupancy final_state;
  EventLog log;
  MartingaleDiag diag;
  std::int64_t events = 0;
  /// Number of events whose jump was not a single-coordinate +-1 move or
  /// that left the counts non-monotone. Always 0; kept as a runtime check.
  std::int64_t invariant_violations = 0;
  /// Levels at which arrivals landed while the minimum queue length was
  /// smaller (for the d = n check). Counts arrivals whose level != m(G)+1.
  std::int64_t non_minimal_arrivals = 0;
  /// time integral of jobs/n over [0, t_end]
  double mean_queue_integral = 0.0;
};

struct CtmcOptions {
  std::size_t coords = 8;
  bool diagnostics = true;
  /// When set, accumulates time spent in each state (counts vector) on [burn_in, t_end].
  std::map<std::vector<std::int64_t>, double>* state_time = nullptr;
  double burn_in = 0.0;
};

/// Occupancy-rate Gillespie simulator of the prelimit chain.
///
/// Coordinate i rises by 1/n at rate n lambda (beta(g_{i-1}) - beta(g_i))
/// and falls at rate n (g_i - g_{i+1}). Runs are reproducible from
/// (seed, replicate) and independent of thread placement.
class CtmcSimulator {
 public:
  explicit CtmcSimulator(const SystemParams& params);

  /// grid must start at 0 and end at t_end.
  CtmcRun run(const Occupancy& init, std::span<const double> grid, std::uint64_t seed, std::uint64_t replicate,
              const CtmcOptions& options = {}) const;

  const SystemParams& params() const { return params_; }

 private:
  SystemParams params_;
  std::shared_ptr<const LatticeChoiceTable> table_;
};

/// Direct per-queue simulation: each arrival samples d queues without
/// replacement and joins a shortest one (ties uniform).
CtmcRun per_queue_simulate(const SystemParams& params, const Occupancy& init, std::span<const double> grid,
                           std::uint64_t seed, std::uint64_t replicate, std::size_t coords);

/// Z = sqrt(n)(G - mu), coordinatewise.
SampledPath scaled_path(const SampledPath& g, const NearFixedPoint& mu);

/// Y_1 = Z_1 + ... + Z_k, Y_j = Z_{k+j-1} for j >= 2.
SampledPath sub_regime_shift(const SampledPath& z, std::size_t k);

struct MartingaleReport {
  double mean_sup_norm_sq = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;  // 4 T (1 + lambda) / n
  std::size_t replicates = 0;
  /// mean exceeds bound + 3 standard errors.
  bool violation = false;
};

/// sup over grid points t <= T of norm_sq, averaged across runs.
MartingaleReport martingale_check(std::span<const CtmcRun> runs, const SystemParams& params, double T);

struct GeneratorResult {
  std::vector<std::vector<std::int64_t>> states;  // counts vectors of length level_cap
  std::vector<double> stationary;
  double residual = 0.0;  // max |(pi Q)_j|
  std::size_t transitions = 0;
};

inline constexpr std::size_t kGeneratorStateCap = 20000;

/// Enumerates all occupancies with at most level_cap levels, builds the
/// generator with arrivals above the cap dropped, and solves pi Q = 0,
/// sum pi = 1.
GeneratorResult brute_force_generator(const SystemParams& params, std::size_t level_cap);

}  // namespace jsqd
