#include <limits>
#include <numeric>
#include <stdexcept>

#include "jsqd/ctmc.hpp"
#include "jsqd/rng.hpp"
#include "tracker.hpp"

namespace jsqd {

CtmcRun per_queue_simulate(const SystemParams& params, const Occupancy& init, std::span<const double> grid,
                           std::uint64_t seed, std::uint64_t replicate, std::size_t coords) {
  params.validate();
  const LatticeChoiceTable table(params.n, params.d);
  CtmcOptions options;
  options.coords = coords;
  options.diagnostics = false;
  detail::OccupancyTracker tracker(params, table, init, grid, options);

  const auto n = static_cast<std::size_t>(params.n);
  const auto d = static_cast<std::size_t>(params.d);
  // queue q holds #{i : counts_i > q} jobs
  std::vector<std::int64_t> length(n, 0);
  for (std::int64_t c : init.counts) {
    for (std::int64_t q = 0; q < c; ++q) ++length[static_cast<std::size_t>(q)];
  }
  std::vector<std::size_t> busy;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t q = 0; q < n; ++q) {
    if (length[q] > 0) {
      slot[q] = busy.size();
      busy.push_back(q);
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  RandomStream rng(seed, replicate);
  double t = 0.0;
  for (;;) {
    const double rate = tracker.total_rate();
    const double t_next = rate > 0.0 ? t + rng.exponential() / rate : std::numeric_limits<double>::infinity();
    if (!tracker.advance_to(t_next)) break;
    t = t_next;
    if (rng.uniform_open() * rate < tracker.arrival_rate()) {
      std::size_t best = 0;
      std::int64_t best_len = std::numeric_limits<std::int64_t>::max();
      std::uint64_t ties = 0;
      for (std::size_t s = 0; s < d; ++s) {
        const std::size_t pick = s + static_cast<std::size_t>(rng.uniform_int(n - s));
        std::swap(perm[s], perm[pick]);
        const std::size_t q = perm[s];
        if (length[q] < best_len) {
          best = q;
          best_len = length[q];
          ties = 1;
        } else if (length[q] == best_len) {
          ++ties;
          if (rng.uniform_int(ties) == 0) best = q;
        }
      }
      if (length[best] == 0) {
        slot[best] = busy.size();
        busy.push_back(best);
      }
      ++length[best];
      tracker.arrive(static_cast<std::size_t>(length[best]), t);
    } else {
      const std::size_t q = busy[rng.uniform_int(busy.size())];
      tracker.depart(static_cast<std::size_t>(length[q]), t);
      --length[q];
      if (length[q] == 0) {
        const std::size_t pos = slot[q];
        busy[pos] = busy.back();
        slot[busy[pos]] = pos;
        busy.pop_back();
        slot[q] = std::numeric_limits<std::size_t>::max();
      }
    }
  }
  return tracker.finish();
}

}  // namespace jsqd
