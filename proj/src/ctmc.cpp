#include "jsqd/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jsqd/rng.hpp"
#include "tracker.hpp"

namespace jsqd {

namespace detail {

OccupancyTracker::OccupancyTracker(const SystemParams& params, const LatticeChoiceTable& table,
                                   const Occupancy& init, std::span<const double> grid, const CtmcOptions& options)
    : params_(params),
      table_(table),
      n_(params.n),
      arrival_rate_(static_cast<double>(params.n) * params.lambda),
      grid_(grid),
      options_(options) {
  validate_grid(grid);
  if (grid.size() < 2) throw std::invalid_argument("simulation horizon t_end must be positive");
  init.validate();
  if (init.n != params.n) throw std::invalid_argument("initial occupancy has the wrong n");
  c_ = init.counts;
  c0_ = init.counts;
  jobs_ = jobs0_ = init.jobs();

  run_.g = SampledPath(std::vector<double>(grid.begin(), grid.end()), options.coords);
  run_.jobs.assign(grid.size(), 0.0);
  if (options.diagnostics) {
    run_.diag.martingale = SampledPath(run_.g.times, options.coords);
    run_.diag.quadratic_variation = SampledPath(run_.g.times, options.coords);
    run_.diag.norm_sq.assign(grid.size(), 0.0);
  }
  ensure_tracked(c_.size() + 1);
}

void OccupancyTracker::ensure_tracked(std::size_t i) {
  auto& log = run_.log;
  while (log.arrivals.size() < i) {
    log.arrivals.push_back(0);
    log.departures.push_back(0);
    log.arrival_compensator.push_back(0.0);
    log.departure_compensator.push_back(0.0);
    arr_rate_.push_back(0.0);
    dep_rate_.push_back(0.0);
    last_t_.push_back(t_);
    refresh(log.arrivals.size());
  }
}

void OccupancyTracker::refresh(std::size_t i) {
  if (!options_.diagnostics || i == 0 || i > arr_rate_.size()) return;
  arr_rate_[i - 1] = arrival_rate_ * (table_[count(i - 1)] - table_[count(i)]);
  dep_rate_[i - 1] = static_cast<double>(count(i) - count(i + 1));
}

void OccupancyTracker::flush(std::size_t i, double t) {
  if (!options_.diagnostics || i == 0 || i > arr_rate_.size()) return;
  const double span = t - last_t_[i - 1];
  run_.log.arrival_compensator[i - 1] += arr_rate_[i - 1] * span;
  run_.log.departure_compensator[i - 1] += dep_rate_[i - 1] * span;
  last_t_[i - 1] = t;
}

void OccupancyTracker::record(std::size_t j) {
  const double t = grid_[j];
  const double nd = static_cast<double>(n_);
  for (std::size_t i = 1; i <= options_.coords; ++i) {
    run_.g.values[i - 1][j] = static_cast<double>(count(i)) / nd;
  }
  run_.jobs[j] = static_cast<double>(jobs_);

  const auto& log = run_.log;
  for (std::size_t i = 1; i <= log.arrivals.size(); ++i) {
    const std::int64_t initial = i <= c0_.size() ? c0_[i - 1] : 0;
    const std::int64_t gad = count(i) - initial - log.arrivals[i - 1] + log.departures[i - 1];
    run_.diag.gad_residual = std::max(run_.diag.gad_residual, std::abs(gad));
  }
  const std::int64_t cons = jobs_ - jobs0_ - log.total_arrivals + log.total_departures;
  run_.diag.conservation_residual = std::max(run_.diag.conservation_residual, std::abs(cons));

  if (!options_.diagnostics) return;
  double norm_sq = 0.0;
  for (std::size_t i = 1; i <= log.arrivals.size(); ++i) {
    flush(i, t);
    const double m = ((static_cast<double>(log.arrivals[i - 1]) - log.arrival_compensator[i - 1]) -
                      (static_cast<double>(log.departures[i - 1]) - log.departure_compensator[i - 1])) /
                     nd;
    norm_sq += m * m;
    if (i <= options_.coords) {
      run_.diag.martingale.values[i - 1][j] = m;
      run_.diag.quadratic_variation.values[i - 1][j] =
          (log.arrival_compensator[i - 1] + log.departure_compensator[i - 1]) / (nd * nd);
    }
  }
  run_.diag.norm_sq[j] = norm_sq;
}

void OccupancyTracker::accumulate(double from, double to) {
  if (!(to > from)) return;
  run_.mean_queue_integral += static_cast<double>(jobs_) / static_cast<double>(n_) * (to - from);
  if (options_.state_time) {
    const double lo = std::max(from, options_.burn_in);
    if (to > lo) {
      std::vector<std::int64_t> key = c_;
      while (!key.empty() && key.back() == 0) key.pop_back();
      (*options_.state_time)[key] += to - lo;
    }
  }
}

bool OccupancyTracker::advance_to(double t_next) {
  while (next_grid_ < grid_.size() && grid_[next_grid_] < t_next) {
    record(next_grid_);
    ++next_grid_;
  }
  const double t_end = grid_.back();
  accumulate(t_, std::min(t_next, t_end));
  if (next_grid_ == grid_.size()) return false;
  t_ = t_next;
  return true;
}

void OccupancyTracker::check_level(std::size_t level) {
  const std::int64_t v = count(level);
  if (v < count(level + 1) || v > count(level - 1)) ++run_.invariant_violations;
}

void OccupancyTracker::arrive(std::size_t level, double t) {
  if (level == 0 || level > c_.size() + 1) {
    ++run_.invariant_violations;
    return;
  }
  std::size_t m = 0;
  while (m < c_.size() && c_[m] == n_) ++m;
  if (level != m + 1) ++run_.non_minimal_arrivals;

  ensure_tracked(level + 1);
  for (std::size_t i = level - 1; i <= level + 1; ++i) flush(i, t);
  if (level > c_.size()) c_.push_back(0);
  ++c_[level - 1];
  ++run_.log.arrivals[level - 1];
  ++run_.log.total_arrivals;
  ++jobs_;
  ++run_.events;
  for (std::size_t i = level - 1; i <= level + 1; ++i) refresh(i);
  check_level(level);
}

void OccupancyTracker::depart(std::size_t level, double t) {
  if (level == 0 || level > c_.size() || c_[level - 1] == 0) {
    ++run_.invariant_violations;
    return;
  }
  for (std::size_t i = level - 1; i <= level + 1; ++i) flush(i, t);
  --c_[level - 1];
  ++run_.log.departures[level - 1];
  ++run_.log.total_departures;
  --jobs_;
  ++run_.events;
  for (std::size_t i = level - 1; i <= level + 1; ++i) refresh(i);
  check_level(level);
}

CtmcRun OccupancyTracker::finish() {
  const double t_end = grid_.back();
  for (std::size_t i = 1; i <= arr_rate_.size(); ++i) flush(i, t_end);
  run_.final_state.n = n_;
  run_.final_state.counts = c_;
  while (!run_.final_state.counts.empty() && run_.final_state.counts.back() == 0) run_.final_state.counts.pop_back();
  return std::move(run_);
}

}  // namespace detail

CtmcSimulator::CtmcSimulator(const SystemParams& params)
    : params_(params), table_(std::make_shared<LatticeChoiceTable>(params.n, params.d)) {
  params.validate();
}

CtmcRun CtmcSimulator::run(const Occupancy& init, std::span<const double> grid, std::uint64_t seed,
                           std::uint64_t replicate, const CtmcOptions& options) const {
  detail::OccupancyTracker tracker(params_, *table_, init, grid, options);
  RandomStream rng(seed, replicate);
  const LatticeChoiceTable& beta = *table_;
  double t = 0.0;
  for (;;) {
    const double rate = tracker.total_rate();
    const double t_next = rate > 0.0 ? t + rng.exponential() / rate : std::numeric_limits<double>::infinity();
    if (!tracker.advance_to(t_next)) break;
    t = t_next;
    if (rng.uniform_open() * rate < tracker.arrival_rate()) {
      const double v = rng.uniform();
      std::size_t level = 1;
      while (!(beta[tracker.count(level)] < v)) ++level;
      tracker.arrive(level, t);
    } else {
      const auto j = static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(tracker.busy())));
      std::size_t level = 1;
      while (level < tracker.levels() && j < tracker.count(level + 1)) ++level;
      tracker.depart(level, t);
    }
  }
  return tracker.finish();
}

SampledPath scaled_path(const SampledPath& g, const NearFixedPoint& mu) {
  const double root_n = mu.params.sqrt_n();
  SampledPath z(g.times, g.coords());
  for (std::size_t i = 0; i < g.coords(); ++i) {
    const double centre = mu(i + 1);
    for (std::size_t j = 0; j < g.size(); ++j) z.values[i][j] = root_n * (g.values[i][j] - centre);
  }
  return z;
}

SampledPath sub_regime_shift(const SampledPath& z, std::size_t k) {
  if (k < 1 || k > z.coords()) throw std::invalid_argument("sub_regime_shift: need 1 <= k <= coords");
  SampledPath y(z.times, z.coords() - k + 1);
  for (std::size_t j = 0; j < z.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += z.values[i][j];
    y.values[0][j] = sum;
    for (std::size_t r = 1; r < y.coords(); ++r) y.values[r][j] = z.values[k + r - 1][j];
  }
  return y;
}

MartingaleReport martingale_check(std::span<const CtmcRun> runs, const SystemParams& params, double T) {
  MartingaleReport rep;
  rep.replicates = runs.size();
  rep.bound = 4.0 * T * (1.0 + params.lambda) / static_cast<double>(params.n);
  if (runs.empty()) return rep;
  std::vector<double> sups;
  sups.reserve(runs.size());
  for (const auto& run : runs) {
    if (run.diag.norm_sq.empty()) throw std::invalid_argument("martingale_check: run has no diagnostics");
    double sup = 0.0;
    for (std::size_t j = 0; j < run.g.size() && run.g.times[j] <= T + 1e-12; ++j) {
      sup = std::max(sup, run.diag.norm_sq[j]);
    }
    sups.push_back(sup);
  }
  double mean = 0.0;
  for (double s : sups) mean += s;
  mean /= static_cast<double>(sups.size());
  double var = 0.0;
  for (double s : sups) var += (s - mean) * (s - mean);
  if (sups.size() > 1) var /= static_cast<double>(sups.size() - 1);
  rep.mean_sup_norm_sq = mean;
  rep.standard_error = std::sqrt(var / static_cast<double>(sups.size()));
  rep.violation = mean > rep.bound + 3.0 * rep.standard_error;
  return rep;
}

}  // namespace jsqd
