#include "jsqd/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>

namespace jsqd {

int worker_count() {
  if (const char* env = std::getenv("JSQD_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

void for_each_index(std::size_t count, Execution exec, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<CtmcRun> ctmc_ensemble(const CtmcSimulator& sim, const Occupancy& init, std::span<const double> grid,
                                   std::uint64_t seed, std::size_t replicates, const CtmcOptions& options,
                                   Execution exec) {
  if (options.state_time) throw std::invalid_argument("ctmc_ensemble: state_time recording is single-run only");
  std::vector<CtmcRun> runs(replicates);
  for_each_index(replicates, exec, [&](std::size_t r) { runs[r] = sim.run(init, grid, seed, r, options); });
  return runs;
}

std::vector<CtmcRun> per_queue_ensemble(const SystemParams& params, const Occupancy& init,
                                        std::span<const double> grid, std::uint64_t seed, std::size_t replicates,
                                        std::size_t coords, Execution exec) {
  std::vector<CtmcRun> runs(replicates);
  for_each_index(replicates, exec,
                 [&](std::size_t r) { runs[r] = per_queue_simulate(params, init, grid, seed, r, coords); });
  return runs;
}

SdeSamples sde_ensemble(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                        std::size_t replicates, std::span<const double> times, Execution exec) {
  spec.validate();
  const std::size_t dim = spec.dimension();
  SdeSamples out;
  out.times.assign(times.begin(), times.end());
  out.values.assign(dim, std::vector<std::vector<double>>(times.size(), std::vector<double>(replicates, 0.0)));

  std::vector<std::int64_t> clips(replicates, 0);
  std::vector<double> max_z1(replicates, 0.0);
  std::vector<double> compl_abs(replicates, 0.0);
  std::vector<double> min_inc(replicates, 0.0);
  std::vector<std::size_t> slots;
  {
    // Resolve sample slots once from the recorded time grid.
    const auto grid = uniform_grid(options.t_end, options.dt);
    SampledPath probe;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (j % options.record_every == 0 || j + 1 == grid.size()) probe.times.push_back(grid[j]);
    }
    for (double t : times) {
      const std::size_t s = probe.index_at(t);
      if (std::abs(probe.times[s] - t) > 1e-9) throw std::invalid_argument("sde_ensemble: time not on recorded grid");
      slots.push_back(s);
    }
  }
  for_each_index(replicates, exec, [&](std::size_t r) {
    const SdePath p = simulate_limit(spec, options, seed, r);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < slots.size(); ++j) out.values[i][j][r] = p.path.values[i][slots[j]];
    }
    clips[r] = p.clip_events;
    max_z1[r] = p.max_z1;
    compl_abs[r] = std::abs(p.complementarity);
    for (std::size_t j = 1; j < p.eta.size(); ++j) min_inc[r] = std::min(min_inc[r], p.eta[j] - p.eta[j - 1]);
  });
  out.steps = static_cast<std::int64_t>(sde_steps(options) * replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    out.clip_events += clips[r];
    out.max_z1 = std::max(out.max_z1, max_z1[r]);
    out.max_abs_complementarity = std::max(out.max_abs_complementarity, compl_abs[r]);
    out.min_eta_increment = std::min(out.min_eta_increment, min_inc[r]);
  }
  return out;
}

std::vector<double> beta_grid(const SystemParams& params, std::span<const double> xs, Execution exec) {
  std::vector<double> out(xs.size());
  for (double x : xs) {
    if (!(x >= -kInputTolerance && x <= 1.0 + kInputTolerance)) throw std::domain_error("beta_grid: x outside [0,1]");
  }
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = beta(params, xs[i]);
    return out;
  }
  const auto n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = beta(params, xs[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace jsqd
