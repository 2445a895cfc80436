#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "jsqd/ctmc.hpp"
#include "jsqd/diffusion.hpp"

namespace jsqd {

/// Serial is the reference implementation; Parallel spreads replicates over
/// OpenMP threads. Both give bit-identical results because every replicate
/// owns its random stream and writes only its own output slot.
enum class Execution { Serial, Parallel };

/// Worker count for Parallel: JSQD_WORKERS if set and positive, otherwise
/// the OpenMP default.
int worker_count();

/// Calls body(i) for i in [0, count). The first exception (lowest index) is
/// rethrown after all workers finish.
void for_each_index(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body);

std::vector<CtmcRun> ctmc_ensemble(const CtmcSimulator& sim, const Occupancy& init, std::span<const double> grid,
                                   std::uint64_t seed, std::size_t replicates, const CtmcOptions& options,
                                   Execution exec);

std::vector<CtmcRun> per_queue_ensemble(const SystemParams& params, const Occupancy& init,
                                        std::span<const double> grid, std::uint64_t seed, std::size_t replicates,
                                        std::size_t coords, Execution exec);

/// Limit-SDE samples at selected times: values[coord][time][replicate].
struct SdeSamples {
  std::vector<double> times;
  std::vector<std::vector<std::vector<double>>> values;
  std::int64_t clip_events = 0;
  std::int64_t steps = 0;
  double max_z1 = -std::numeric_limits<double>::infinity();
  double max_abs_complementarity = 0.0;
  double min_eta_increment = 0.0;  // most negative recorded eta increment (0 when monotone)
};

/// Times must lie on the recorded grid of `options`.
SdeSamples sde_ensemble(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                        std::size_t replicates, std::span<const double> times, Execution exec);

std::vector<double> beta_grid(const SystemParams& params, std::span<const double> xs, Execution exec);

}  // namespace jsqd
