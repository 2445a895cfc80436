#include "jsqd/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jsqd/skorohod.hpp"

namespace jsqd {

namespace {

void check_init(std::span<const double> init) {
  for (std::size_t i = 0; i < init.size(); ++i) {
    if (!(init[i] >= 0.0 && init[i] <= 1.0)) throw std::invalid_argument("fluid init values must lie in [0,1]");
    if (i > 0 && init[i] > init[i - 1]) throw std::invalid_argument("fluid init must be nonincreasing");
  }
}

struct StepPlan {
  std::vector<double> steps;       // step grid
  std::size_t stride = 1;          // record every stride-th step point
};

StepPlan plan(const FluidOptions& options) {
  StepPlan p;
  p.steps = uniform_grid(options.t_end, options.dt);
  if (options.output_dt > 0.0) {
    const double ratio = options.output_dt / options.dt;
    p.stride = static_cast<std::size_t>(std::llround(ratio));
    if (p.stride == 0 || std::abs(static_cast<double>(p.stride) - ratio) > 1e-9 * ratio) {
      throw std::invalid_argument("fluid: output_dt must be a multiple of dt");
    }
  }
  return p;
}

std::vector<double> output_times(const StepPlan& p) {
  std::vector<double> out;
  for (std::size_t j = 0; j < p.steps.size(); ++j) {
    if (j % p.stride == 0 || j + 1 == p.steps.size()) out.push_back(p.steps[j]);
  }
  return out;
}

std::vector<double> padded(std::span<const double> init, std::size_t coords) {
  std::vector<double> g(coords, 0.0);
  for (std::size_t i = 0; i < std::min(coords, init.size()); ++i) g[i] = init[i];
  for (std::size_t i = coords; i < init.size(); ++i) {
    if (init[i] > 0.0) throw std::invalid_argument("fluid: init has mass beyond the coordinate truncation");
  }
  return g;
}

}  // namespace

std::size_t default_fluid_coords(std::span<const double> init) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < init.size(); ++i) {
    if (init[i] > 0.0) last = i + 1;
  }
  return last + 2;
}

FluidSolution integrate_reflected(double lambda, std::span<const double> init, const FluidOptions& options) {
  check_init(init);
  if (!(lambda >= 0.0)) throw std::invalid_argument("fluid: lambda must be nonnegative");
  const std::size_t coords = options.coords ? options.coords : default_fluid_coords(init);
  const StepPlan p = plan(options);
  const auto times = output_times(p);

  FluidSolution sol;
  sol.g = SampledPath(times, coords);
  sol.v = SampledPath(times, coords + 1);
  std::vector<double> g = padded(init, coords);
  std::vector<double> v(coords + 1, 0.0);
  std::vector<double> fresh(coords);

  std::size_t out = 0;
  auto record = [&]() {
    for (std::size_t i = 0; i < coords; ++i) sol.g.values[i][out] = g[i];
    for (std::size_t i = 0; i <= coords; ++i) sol.v.values[i][out] = v[i];
    ++out;
  };
  record();
  for (std::size_t j = 1; j < p.steps.size(); ++j) {
    const double h = p.steps[j] - p.steps[j - 1];
    double dv_prev = lambda * h;
    v[0] = lambda * p.steps[j];
    for (std::size_t i = 0; i < coords; ++i) {
      const double next = i + 1 < coords ? g[i + 1] : 0.0;
      const double delta = -(g[i] - next) * h + dv_prev;
      const auto step = reflect_increment(g[i], delta, 1.0);
      fresh[i] = step.constrained;
      v[i + 1] += step.pushed;
      sol.complementarity += (1.0 - step.constrained) * step.pushed;
      dv_prev = step.pushed;
    }
    g.swap(fresh);
    if (j % p.stride == 0 || j + 1 == p.steps.size()) record();
  }
  return sol;
}

double fluid_p(double lambda, std::span<const double> g, std::size_t m, std::size_t j) {
  auto at = [&](std::size_t i) { return i >= 1 && i <= g.size() ? g[i - 1] : 0.0; };
  if (m >= 1 && j == m - 1) return lambda - std::max(lambda - 1.0 + at(j + 2), 0.0);
  if (j == m && m > 0) return std::max(lambda - 1.0 + at(j + 1), 0.0);
  if (j == m && m == 0) return lambda;
  return 0.0;
}

std::vector<double> explicit_rhs(double lambda, std::span<const double> g, double tol) {
  std::size_t m = 0;
  while (m < g.size() && g[m] >= 1.0 - tol) ++m;
  std::vector<double> rhs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double next = i + 1 < g.size() ? g[i + 1] : 0.0;
    rhs[i] = -(g[i] - next) + fluid_p(lambda, g, m, i);
  }
  return rhs;
}

FluidSolution integrate_explicit(double lambda, std::span<const double> init, const FluidOptions& options) {
  check_init(init);
  if (!(lambda >= 0.0)) throw std::invalid_argument("fluid: lambda must be nonnegative");
  const std::size_t coords = options.coords ? options.coords : default_fluid_coords(init);
  const StepPlan p = plan(options);
  const auto times = output_times(p);
  const double tol = 10.0 * options.dt;

  FluidSolution sol;
  sol.g = SampledPath(times, coords);
  std::vector<double> g = padded(init, coords);
  std::size_t out = 0;
  auto record = [&]() {
    for (std::size_t i = 0; i < coords; ++i) sol.g.values[i][out] = g[i];
    ++out;
  };
  record();
  for (std::size_t j = 1; j < p.steps.size(); ++j) {
    const double h = p.steps[j] - p.steps[j - 1];
    const auto rhs = explicit_rhs(lambda, g, tol);
    for (std::size_t i = 0; i < coords; ++i) g[i] = std::clamp(g[i] + rhs[i] * h, 0.0, 1.0);
    if (j % p.stride == 0 || j + 1 == p.steps.size()) record();
  }
  return sol;
}

namespace {

double sup_l1(const SampledPath& a, const SampledPath& b) {
  double sup = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < a.coords(); ++i) l1 += std::abs(a.values[i][j] - b.values[i][j]);
    sup = std::max(sup, l1);
  }
  return sup;
}

}  // namespace

CrossCheckReport cross_check(double lambda, std::span<const double> init, double t_end, double dt,
                             std::size_t coords) {
  CrossCheckReport rep;
  rep.dt = dt;
  FluidOptions opt;
  opt.t_end = t_end;
  opt.coords = coords ? coords : default_fluid_coords(init);
  opt.dt = dt;
  opt.output_dt = dt;
  rep.sup_l1 = sup_l1(integrate_reflected(lambda, init, opt).g, integrate_explicit(lambda, init, opt).g);
  opt.dt = dt / 2.0;
  opt.output_dt = dt;
  rep.sup_l1_half =
      sup_l1(integrate_reflected(lambda, init, opt).g, integrate_explicit(lambda, init, opt).g);
  rep.ratio = rep.sup_l1 > 0.0 ? rep.sup_l1_half / rep.sup_l1 : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace jsqd
