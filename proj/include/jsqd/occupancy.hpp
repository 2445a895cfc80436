#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsqd/choice.hpp"

namespace jsqd {

/// Lattice occupancy of an n-server system, stored as integer counts:
/// counts[i-1] = number of queues with at least i jobs = n * g_i.
/// Trailing zeros are not stored.
struct Occupancy {
  std::int64_t n = 1;
  std::vector<std::int64_t> counts;

  /// Throws unless n >= counts[0] >= counts[1] >= ... >= 0.
  void validate() const;

  /// g_i for i >= 1 (0 past the stored levels).
  double fraction(std::size_t i) const;
  std::int64_t count(std::size_t i) const {
    return i >= 1 && i <= counts.size() ? counts[i - 1] : 0;
  }
  std::int64_t jobs() const;
  std::vector<double> fractions(std::size_t coords) const;

  /// Rounds each target to the nearest multiple of 1/n, then a backward
  /// cumulative max restores monotonicity. Rejects values outside [0,1].
  static Occupancy from_fractions(std::int64_t n, const std::vector<double>& target);
};

/// Initial condition for the prelimit simulators.
///
/// Text forms (CLI and config): `empty`, `fixed:K[:G]` (K full levels then
/// fraction G), `mu` (lattice-rounded near fixed point), `file:PATH`
/// (whitespace- or comma-separated fractions g_1, g_2, ...).
struct InitSpec {
  enum class Kind { Empty, FluidPoint, NearMu, Explicit };

  Kind kind = Kind::Empty;
  std::size_t k = 0;
  double gamma_coeff = 0.0;
  std::vector<double> values;  // Explicit

  static InitSpec parse(const std::string& text);
  /// Target fractions before lattice rounding.
  std::vector<double> target(const SystemParams& params) const;
  Occupancy resolve(const SystemParams& params) const;
};

std::vector<double> read_fraction_file(const std::string& path);

}  // namespace jsqd
