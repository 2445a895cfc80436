#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "jsqd/fixed_point.hpp"
#include "jsqd/path.hpp"

namespace jsqd {

/// Limit diffusion to simulate. All three systems are driven by one Brownian
/// motion entering the first simulated coordinate.
///
/// Sub: the simulated state is Y (dimension r - k + 1), obtained from the
/// Z-coordinates in `z` by Y_1 = z_1 + ... + z_k, Y_j = z_{k+j-1}.
/// Critical and Super: the state is Z itself (dimension r).
struct LimitSystemSpec {
  RegimeKind regime = RegimeKind::Sub;
  std::size_t r = 2;
  std::size_t k = 1;
  double alpha = 0.0;  // +inf allowed for Critical and Super
  double c = 1.0;      // Critical only
  std::vector<double> z;  // initial Z_1..Z_r; missing entries are 0

  void validate() const;
  std::size_t dimension() const;
  /// Initial state in simulated coordinates.
  std::vector<double> initial_state() const;
};

struct SdeOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  /// Keep every n-th step point (the final point is always kept).
  std::size_t record_every = 1;
};

struct SdePath {
  SampledPath path;          // simulated coordinates
  std::vector<double> eta;   // Super only, on path.times
  std::int64_t clip_events = 0;
  std::int64_t steps = 0;
  /// sum over steps of (alpha - Z_1) d eta. Super only.
  double complementarity = 0.0;
  /// Super only: largest Z_1 over every step (not just recorded ones).
  double max_z1 = 0.0;
};

/// Per-step magnitude bound on the exponential drift term.
inline constexpr double kExponentialClip = 10.0;

std::size_t sde_steps(const SdeOptions& options);

/// One N(0,1) per step from stream (seed, replicate).
std::vector<double> draw_normals(std::uint64_t seed, std::uint64_t replicate, std::size_t steps);

/// Euler-Maruyama with caller-supplied standard normals (one per step).
SdePath simulate_with_noise(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals);

SdePath simulate_subcritical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                             std::uint64_t replicate = 0);
SdePath simulate_critical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                          std::uint64_t replicate = 0);
SdePath simulate_supercritical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                               std::uint64_t replicate = 0);
/// Dispatches on spec.regime.
SdePath simulate_limit(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                       std::uint64_t replicate = 0);

/// Both systems stepped with the same normals. Rejects specs whose
/// simulations would produce different grids.
std::pair<SdePath, SdePath> shared_noise_pair(const LimitSystemSpec& a, const LimitSystemSpec& b,
                                              const SdeOptions& options, std::uint64_t seed,
                                              std::uint64_t replicate = 0);

/// Y = Z - alpha e_1 applied to a Super path (finite alpha).
SampledPath shift_reflection_at_one(const SampledPath& z, double alpha);

/// The same Super system written directly in Y = Z - alpha e_1: extra drift
/// -alpha in coordinate 1 and barrier 0.
SdePath simulate_reflection_at_one(const LimitSystemSpec& spec, const SdeOptions& options,
                                   std::span<const double> normals);

}  // namespace jsqd
