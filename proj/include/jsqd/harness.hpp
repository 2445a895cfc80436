#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jsqd/ctmc.hpp"
#include "jsqd/diffusion.hpp"
#include "jsqd/ensemble.hpp"
#include "jsqd/expr.hpp"
#include "jsqd/fixed_point.hpp"
#include "jsqd/occupancy.hpp"

namespace jsqd {

struct LlnConfig {
  SystemParams params;
  InitSpec init;
  double t_end = 5.0;
  double grid_dt = 0.01;
  double fluid_dt = 1e-3;
  std::size_t replicates = 20;
  std::size_t coords = 8;  // tracked coordinates I
  std::uint64_t seed = 1;
  Execution exec = Execution::Parallel;
};

struct LlnBlock {
  SystemParams params;
  std::size_t coords = 0;
  std::vector<double> sup_errors;  // per replicate: sup_t ||G_n - g||_1 incl. tail terms
  double median = 0.0;
  double p90 = 0.0;
  double max = 0.0;
};

/// Runs the prelimit chain and the reflected fluid ODE from the same
/// lattice-rounded start and records sup_t ||G_n(t) - g(t)||_1. Coordinates
/// past I enter through sum_{i>I} G_{n,i} + sum_{i>I} g_i.
LlnBlock run_lln_experiment(const LlnConfig& config);

struct FluctuationConfig {
  std::string d_expr = "100";
  std::string lambda_expr = "1 - log(100)/100";
  std::int64_t n = 10000;
  RegimeKind expected = RegimeKind::Critical;
  ClassifierConfig classifier;
  InitSpec init{InitSpec::Kind::NearMu, 0, 0.0, {}};
  std::vector<double> times{0.5, 1.0, 2.0};
  std::vector<std::size_t> coords{1, 2};
  double grid_dt = 0.01;
  std::size_t prelimit_replicates = 200;
  std::size_t limit_replicates = 1000;
  double limit_dt = 1e-3;
  std::size_t limit_r = 0;  // 0: k + 3 (sub) or 4
  double ks_tolerance = 0.2;
  double level = 0.01;
  std::uint64_t seed = 1;
  Execution exec = Execution::Parallel;
};

struct KsCell {
  std::size_t coord = 0;
  double time = 0.0;
  double d = 0.0;
  double p_value = 1.0;
  std::size_t n_a = 0;  // prelimit
  std::size_t n_b = 0;  // limit
  double mean_a = 0.0;
  double var_a = 0.0;
  double mean_b = 0.0;
  double var_b = 0.0;
  bool pass = false;
};

struct BarrierBlock {
  double bound = 0.0;       // sqrt(n)(1 - lambda)
  double max_z1 = 0.0;      // over every path and grid point
  bool holds = true;
  std::int64_t gad_residual = 0;
  std::int64_t conservation_residual = 0;
  std::int64_t invariant_violations = 0;
};

struct ComparisonReport {
  std::string kind;  // "fluctuation" or "lln"
  std::optional<LimitRegime> regime;
  std::optional<RegimeKind> expected;
  std::optional<LimitSystemSpec> limit;
  std::vector<KsCell> cells;
  double bonferroni_threshold = 0.0;
  std::optional<BarrierBlock> barrier;
  std::optional<MartingaleReport> martingale;
  std::optional<LlnBlock> lln;
  std::int64_t clip_events = 0;
  std::int64_t limit_steps = 0;
  bool passed = false;
  std::vector<std::string> notes;
};

class RegimeMismatch : public std::runtime_error {
 public:
  RegimeMismatch(const std::string& what, LimitRegime regime)
      : std::runtime_error(what), regime_(std::move(regime)) {}
  const LimitRegime& regime() const { return regime_; }

 private:
  LimitRegime regime_;
};

/// Limit system matched to a classified prelimit system and start Z_n(0).
LimitSystemSpec limit_spec_for(const LimitRegime& regime, const std::vector<double>& z0, std::size_t r);

/// Classifies, gates on the expected regime (throws RegimeMismatch), then
/// compares prelimit Z_n (Y_n in the sub regime) with the matched limit
/// SDE by two-sample KS in every (coordinate, time) cell.
ComparisonReport run_fluctuation_experiment(const FluctuationConfig& config);

ComparisonReport lln_report(const LlnBlock& block, double tolerance);

struct TrendReport {
  ComparisonReport base;
  ComparisonReport scaled;
  double max_d_base = 0.0;
  double max_d_scaled = 0.0;
  double ratio = 0.0;
  double slack = 1.2;
  bool passed = false;
};

/// Runs the same experiment at n and factor * n and compares the largest
/// KS statistic over cells.
TrendReport run_trend_check(const FluctuationConfig& config, std::int64_t factor, double slack);

}  // namespace jsqd
