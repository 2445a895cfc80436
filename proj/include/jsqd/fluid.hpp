#pragma once

#include <span>
#include <vector>

#include "jsqd/path.hpp"

namespace jsqd {

struct FluidOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  /// Truncation I; 0 selects 2 + (largest index with init_i > 0).
  std::size_t coords = 0;
  /// Output spacing; 0 records every step.
  double output_dt = 0.0;
};

struct FluidSolution {
  SampledPath g;  // coordinates 1..I
  /// Row 0 is v_0 = lambda t, rows 1..I are v_1..v_I. Reflected form only.
  SampledPath v;
  /// sum over steps and coordinates of (1 - g_i) dv_i.
  double complementarity = 0.0;
};

std::size_t default_fluid_coords(std::span<const double> init);

/// Forward Euler on the free path of each coordinate, then the incremental
/// Skorohod map at barrier 1. Coordinates are swept 1..I within a step so
/// the fresh v_{i-1} increment feeds coordinate i. g_{I+1} is taken as 0.
FluidSolution integrate_reflected(double lambda, std::span<const double> init, const FluidOptions& options);

/// Forward Euler on g_i' = -(g_i - g_{i+1}) + p_{i-1}(g) with the four p_j
/// cases, first match wins. A coordinate counts as full when g_i >= 1 - 10 dt.
/// Values are clamped to [0,1] after each step.
FluidSolution integrate_explicit(double lambda, std::span<const double> init, const FluidOptions& options);

/// p_j(g) for j >= 0 given m = m(g).
double fluid_p(double lambda, std::span<const double> g, std::size_t m, std::size_t j);

/// Right-hand side of the explicit form, with m computed at tolerance `tol`.
std::vector<double> explicit_rhs(double lambda, std::span<const double> g, double tol);

struct CrossCheckReport {
  double dt = 0.0;
  double sup_l1 = 0.0;       // at dt
  double sup_l1_half = 0.0;  // at dt / 2
  double ratio = 0.0;        // sup_l1_half / sup_l1 (NaN when sup_l1 == 0)
};

/// Runs both forms at dt and dt/2 and compares them on the common grid of
/// spacing dt.
CrossCheckReport cross_check(double lambda, std::span<const double> init, double t_end, double dt,
                             std::size_t coords = 0);

}  // namespace jsqd
