#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jsqd {

/// Time grid plus one row of samples per coordinate. Row r holds coordinate
/// r + 1 (or coordinate r when a caller stores a 0-th coordinate, see the
/// super-regime SDE output).
struct SampledPath {
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  SampledPath() = default;
  SampledPath(std::vector<double> grid, std::size_t coords)
      : times(std::move(grid)), values(coords, std::vector<double>(times.size(), 0.0)) {}

  std::size_t coords() const { return values.size(); }
  std::size_t size() const { return times.size(); }

  /// Throws unless times start at 0, increase strictly, and every value is finite.
  void validate() const;

  /// Index of the last grid point <= t.
  std::size_t index_at(double t) const;
};

/// 0, dt, 2dt, ..., t_end. t_end is always the last point even when it is
/// not a multiple of dt.
std::vector<double> uniform_grid(double t_end, double dt);

/// Checks a grid for use by the simulators: starts at 0, strictly increasing.
void validate_grid(std::span<const double> grid);

}  // namespace jsqd
