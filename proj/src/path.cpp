#include "jsqd/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jsqd {

void validate_grid(std::span<const double> grid) {
  if (grid.empty() || grid.front() != 0.0) throw std::invalid_argument("grid must start at 0");
  for (std::size_t j = 1; j < grid.size(); ++j) {
    if (!(grid[j] > grid[j - 1])) throw std::invalid_argument("grid must be strictly increasing");
  }
}

void SampledPath::validate() const {
  validate_grid(times);
  for (const auto& row : values) {
    if (row.size() != times.size()) throw std::invalid_argument("SampledPath: row length mismatch");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("SampledPath: non-finite value");
    }
  }
}

std::size_t SampledPath::index_at(double t) const {
  auto it = std::upper_bound(times.begin(), times.end(), t + 1e-12);
  if (it == times.begin()) throw std::out_of_range("SampledPath::index_at before grid start");
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

std::vector<double> uniform_grid(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw std::invalid_argument("uniform_grid: need t_end > 0 and dt > 0");
  const auto steps = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(steps + 2);
  for (std::size_t j = 0; j <= steps; ++j) grid.push_back(static_cast<double>(j) * dt);
  if (std::abs(grid.back() - t_end) <= 1e-9 * std::max(1.0, t_end)) {
    grid.back() = t_end;
  } else {
    grid.push_back(t_end);
  }
  return grid;
}

}  // namespace jsqd
