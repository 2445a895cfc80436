#include "jsqd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jsqd/fluid.hpp"
#include "jsqd/rng.hpp"
#include "jsqd/stats.hpp"

namespace jsqd {

namespace {

constexpr std::uint64_t kPrelimitTag = 1;
constexpr std::uint64_t kLimitTag = 2;

std::size_t grid_index(const std::vector<double>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-9);
  if (it == grid.end() || std::abs(*it - t) > 1e-9) {
    throw std::invalid_argument("comparison time " + std::to_string(t) + " is not on the output grid");
  }
  return static_cast<std::size_t>(it - grid.begin());
}

}  // namespace

LlnBlock run_lln_experiment(const LlnConfig& config) {
  config.params.validate();
  if (config.replicates == 0) throw std::invalid_argument("lln: replicates must be positive");
  if (config.coords == 0) throw std::invalid_argument("lln: coords must be positive");
  const Occupancy occ = config.init.resolve(config.params);
  const auto grid = uniform_grid(config.t_end, config.grid_dt);

  FluidOptions fo;
  fo.t_end = config.t_end;
  fo.dt = config.fluid_dt;
  fo.output_dt = config.grid_dt;
  fo.coords = std::max(config.coords, occ.counts.size()) + 4;
  const auto start = occ.fractions(occ.counts.size());
  const FluidSolution fluid = integrate_reflected(config.params.lambda, start, fo);
  if (fluid.g.size() != grid.size()) throw std::invalid_argument("lln: fluid and prelimit grids differ");

  CtmcOptions opts;
  opts.coords = config.coords;
  opts.diagnostics = false;
  const CtmcSimulator sim(config.params);
  const auto runs = ctmc_ensemble(sim, occ, grid, derive_seed(config.seed, kPrelimitTag), config.replicates, opts,
                                  config.exec);

  LlnBlock block;
  block.params = config.params;
  block.coords = config.coords;
  const double nd = static_cast<double>(config.params.n);
  for (const auto& run : runs) {
    double sup = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double err = 0.0;
      double tracked = 0.0;
      for (std::size_t i = 0; i < config.coords; ++i) {
        err += std::abs(run.g.values[i][j] - fluid.g.values[i][j]);
        tracked += run.g.values[i][j];
      }
      err += std::max(run.jobs[j] / nd - tracked, 0.0);
      for (std::size_t i = config.coords; i < fluid.g.coords(); ++i) err += fluid.g.values[i][j];
      sup = std::max(sup, err);
    }
    block.sup_errors.push_back(sup);
  }
  block.median = quantile(block.sup_errors, 0.5);
  block.p90 = quantile(block.sup_errors, 0.9);
  block.max = *std::max_element(block.sup_errors.begin(), block.sup_errors.end());
  return block;
}

ComparisonReport lln_report(const LlnBlock& block, double tolerance) {
  ComparisonReport rep;
  rep.kind = "lln";
  rep.lln = block;
  rep.passed = block.p90 <= tolerance;
  rep.notes.push_back("tolerances are calibrated regression bounds, not rates from the limit theorems");
  return rep;
}

LimitSystemSpec limit_spec_for(const LimitRegime& regime, const std::vector<double>& z0, std::size_t r) {
  LimitSystemSpec spec;
  spec.regime = regime.kind;
  spec.r = r;
  spec.k = regime.kind == RegimeKind::Sub ? regime.k : 1;
  spec.alpha = regime.alpha;
  spec.c = regime.kind == RegimeKind::Critical ? regime.c : 1.0;
  spec.z.assign(z0.begin(), z0.begin() + static_cast<std::ptrdiff_t>(std::min(r, z0.size())));
  return spec;
}

ComparisonReport run_fluctuation_experiment(const FluctuationConfig& config) {
  if (config.times.empty() || config.coords.empty()) throw std::invalid_argument("fluctuation: empty comparison set");
  if (config.prelimit_replicates == 0 || config.limit_replicates == 0) {
    throw std::invalid_argument("fluctuation: replicate counts must be positive");
  }
  const auto rule = ParameterRule::parse(config.d_expr, config.lambda_expr);
  const LimitRegime regime = classify_regime(rule, config.n, config.classifier);
  if (regime.kind != config.expected) {
    throw RegimeMismatch(std::string("regime gate: classified as ") + to_string(regime.kind) + ", config expects " +
                             to_string(config.expected),
                         regime);
  }
  const SystemParams params = regime.params;
  const NearFixedPoint mu = mu_sequence(params, config.classifier.mu_floor);

  const double t_end = *std::max_element(config.times.begin(), config.times.end());
  const auto grid = uniform_grid(t_end, config.grid_dt);
  std::vector<std::size_t> slots;
  for (double t : config.times) slots.push_back(grid_index(grid, t));

  const bool sub = regime.kind == RegimeKind::Sub;
  const std::size_t k = sub ? regime.k : 1;
  const std::size_t max_coord = *std::max_element(config.coords.begin(), config.coords.end());
  if (*std::min_element(config.coords.begin(), config.coords.end()) < 1) {
    throw std::invalid_argument("fluctuation: coordinates are 1-based");
  }
  std::size_t r = config.limit_r ? config.limit_r : (sub ? k + 3 : 4);
  const std::size_t dim = sub ? r - k + 1 : r;
  if (dim < max_coord) throw std::invalid_argument("fluctuation: limit dimension smaller than compared coordinate");
  const std::size_t coords = std::max(r, k + max_coord - 1);

  const Occupancy occ = config.init.resolve(params);
  CtmcOptions opts;
  opts.coords = coords;
  opts.diagnostics = true;
  const CtmcSimulator sim(params);
  const auto runs = ctmc_ensemble(sim, occ, grid, derive_seed(config.seed, kPrelimitTag), config.prelimit_replicates,
                                  opts, config.exec);

  ComparisonReport rep;
  rep.kind = "fluctuation";
  rep.regime = regime;
  rep.expected = config.expected;

  BarrierBlock barrier;
  barrier.bound = params.sqrt_n() * (1.0 - params.lambda);
  barrier.max_z1 = -std::numeric_limits<double>::infinity();
  // samples[cell][replicate]
  std::vector<std::vector<double>> prelimit(config.coords.size() * slots.size());
  std::vector<double> z0;
  for (std::size_t rr = 0; rr < runs.size(); ++rr) {
    const auto& run = runs[rr];
    const SampledPath z = scaled_path(run.g, mu);
    for (double v : z.values[0]) {
      barrier.max_z1 = std::max(barrier.max_z1, v);
      if (v > barrier.bound) barrier.holds = false;
    }
    barrier.gad_residual = std::max(barrier.gad_residual, run.diag.gad_residual);
    barrier.conservation_residual = std::max(barrier.conservation_residual, run.diag.conservation_residual);
    barrier.invariant_violations += run.invariant_violations;
    const SampledPath view = sub ? sub_regime_shift(z, k) : z;
    for (std::size_t a = 0; a < config.coords.size(); ++a) {
      for (std::size_t b = 0; b < slots.size(); ++b) {
        prelimit[a * slots.size() + b].push_back(view.values[config.coords[a] - 1][slots[b]]);
      }
    }
    if (rr == 0) {
      for (std::size_t i = 0; i < r; ++i) z0.push_back(z.values[i][0]);
    }
  }

  const LimitSystemSpec spec = limit_spec_for(regime, z0, r);
  rep.limit = spec;
  SdeOptions so;
  so.t_end = t_end;
  so.dt = config.limit_dt;
  so.record_every = static_cast<std::size_t>(std::llround(config.grid_dt / config.limit_dt));
  if (so.record_every == 0) so.record_every = 1;
  const SdeSamples limit =
      sde_ensemble(spec, so, derive_seed(config.seed, kLimitTag), config.limit_replicates, config.times, config.exec);
  rep.clip_events = limit.clip_events;
  rep.limit_steps = limit.steps;

  const std::size_t ncells = config.coords.size() * slots.size();
  rep.bonferroni_threshold = config.level / static_cast<double>(ncells);
  bool all = true;
  for (std::size_t a = 0; a < config.coords.size(); ++a) {
    for (std::size_t b = 0; b < slots.size(); ++b) {
      KsCell cell;
      cell.coord = config.coords[a];
      cell.time = config.times[b];
      const auto& xa = prelimit[a * slots.size() + b];
      const auto& xb = limit.values[config.coords[a] - 1][b];
      cell.d = ks_two_sample(xa, xb);
      cell.n_a = xa.size();
      cell.n_b = xb.size();
      cell.p_value = ks_pvalue(cell.d, cell.n_a, cell.n_b);
      cell.mean_a = mean(xa);
      cell.var_a = variance(xa);
      cell.mean_b = mean(xb);
      cell.var_b = variance(xb);
      cell.pass = cell.d <= config.ks_tolerance && cell.p_value > rep.bonferroni_threshold;
      all = all && cell.pass;
      rep.cells.push_back(cell);
    }
  }
  rep.martingale = martingale_check(runs, params, t_end);
  const bool exact = barrier.holds && barrier.gad_residual == 0 && barrier.conservation_residual == 0 &&
                     barrier.invariant_violations == 0;
  rep.barrier = barrier;
  rep.passed = all && exact;
  rep.notes.push_back("tolerances are calibrated regression bounds, not rates from the limit theorems");
  if (!regime.note.empty()) rep.notes.push_back(regime.note);
  return rep;
}

TrendReport run_trend_check(const FluctuationConfig& config, std::int64_t factor, double slack) {
  if (factor < 2) throw std::invalid_argument("trend check: factor must be >= 2");
  TrendReport out;
  out.slack = slack;
  out.base = run_fluctuation_experiment(config);
  FluctuationConfig scaled = config;
  scaled.n = config.n * factor;
  out.scaled = run_fluctuation_experiment(scaled);
  for (const auto& c : out.base.cells) out.max_d_base = std::max(out.max_d_base, c.d);
  for (const auto& c : out.scaled.cells) out.max_d_scaled = std::max(out.max_d_scaled, c.d);
  out.ratio = out.max_d_base > 0.0 ? out.max_d_scaled / out.max_d_base : std::numeric_limits<double>::infinity();
  out.passed = out.ratio <= slack;
  return out;
}

}  // namespace jsqd
