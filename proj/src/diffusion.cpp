#include "jsqd/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jsqd/rng.hpp"
#include "jsqd/skorohod.hpp"

namespace jsqd {

void LimitSystemSpec::validate() const {
  if (r < 2) throw std::invalid_argument("limit system: r must be >= 2");
  if (z.size() > r) throw std::invalid_argument("limit system: init has more than r coordinates");
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("limit system: init must be finite");
  }
  switch (regime) {
    case RegimeKind::Sub:
      if (k < 1 || r <= k) throw std::invalid_argument("sub regime: need 1 <= k < r");
      if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("sub regime: alpha must be finite and >= 0");
      break;
    case RegimeKind::Critical:
      if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("critical regime: c must be positive");
      if (std::isnan(alpha) || alpha == -std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("critical regime: alpha must be real or +inf");
      }
      break;
    case RegimeKind::Super: {
      if (!(alpha >= 0.0)) throw std::invalid_argument("super regime: alpha must be in [0, +inf]");
      const double z1 = z.empty() ? 0.0 : z[0];
      if (z1 > alpha + kBarrierStartTolerance) throw std::invalid_argument("super regime: z_1 exceeds alpha");
      break;
    }
    case RegimeKind::Ambiguous: throw std::invalid_argument("limit system: regime is ambiguous");
  }
}

std::size_t LimitSystemSpec::dimension() const { return regime == RegimeKind::Sub ? r - k + 1 : r; }

std::vector<double> LimitSystemSpec::initial_state() const {
  std::vector<double> full(r, 0.0);
  std::copy(z.begin(), z.end(), full.begin());
  if (regime != RegimeKind::Sub) return full;
  std::vector<double> y(dimension(), 0.0);
  for (std::size_t i = 0; i < k; ++i) y[0] += full[i];
  for (std::size_t j = 1; j < y.size(); ++j) y[j] = full[k + j - 1];
  return y;
}

std::size_t sde_steps(const SdeOptions& options) { return uniform_grid(options.t_end, options.dt).size() - 1; }

std::vector<double> draw_normals(std::uint64_t seed, std::uint64_t replicate, std::size_t steps) {
  RandomStream rng(seed, replicate);
  std::vector<double> out(steps);
  for (double& x : out) x = rng.normal();
  return out;
}

namespace {

// Shared stepping loop. `step` advances the state by one Euler step of size
// h with Brownian increment db and returns the pushing increment (0 outside
// the reflected system).
template <class Step>
SdePath run_scheme(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals,
                   std::vector<double> x, Step&& step) {
  if (options.record_every == 0) throw std::invalid_argument("sde: record_every must be positive");
  const auto grid = uniform_grid(options.t_end, options.dt);
  const std::size_t steps = grid.size() - 1;
  if (normals.size() != steps) throw std::invalid_argument("sde: need exactly one normal per step");
  std::vector<double> times;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j % options.record_every == 0 || j == steps) times.push_back(grid[j]);
  }
  SdePath out;
  out.path = SampledPath(times, x.size());
  const bool reflected = spec.regime == RegimeKind::Super;
  if (reflected) out.eta.assign(times.size(), 0.0);
  out.steps = static_cast<std::int64_t>(steps);
  out.max_z1 = x[0];

  double eta = 0.0;
  std::size_t slot = 0;
  auto record = [&]() {
    for (std::size_t i = 0; i < x.size(); ++i) out.path.values[i][slot] = x[i];
    if (reflected) out.eta[slot] = eta;
    ++slot;
  };
  record();
  for (std::size_t j = 1; j <= steps; ++j) {
    const double h = grid[j] - grid[j - 1];
    const double db = std::sqrt(2.0 * h) * normals[j - 1];
    eta += step(x, h, db, out);
    out.max_z1 = std::max(out.max_z1, x[0]);
    if (j % options.record_every == 0 || j == steps) record();
  }
  return out;
}

// dX_i = (X_{i+1} - X_i) dt for i >= from (0-based), X_dim = 0.
inline void chain(std::vector<double>& x, const std::vector<double>& old, std::size_t from, double h) {
  for (std::size_t i = from; i < x.size(); ++i) {
    const double next = i + 1 < old.size() ? old[i + 1] : 0.0;
    x[i] = old[i] + (next - old[i]) * h;
  }
}

SdePath sub_scheme(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals) {
  const double alpha = spec.alpha;
  const bool first = spec.k == 1;
  std::vector<double> old;
  return run_scheme(spec, options, normals, spec.initial_state(),
                    [&](std::vector<double>& y, double h, double db, SdePath&) {
                      old = y;
                      const double d0 = first ? (old[1] - old[0]) - alpha * old[0] : old[1] - alpha * old[0];
                      const double next = old.size() > 2 ? old[2] : 0.0;
                      y[0] = old[0] + d0 * h + db;
                      y[1] = old[1] + ((next - old[1]) + alpha * old[0]) * h;
                      chain(y, old, 2, h);
                      return 0.0;
                    });
}

SdePath critical_scheme(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals) {
  const double c = spec.c;
  const bool active = std::isfinite(spec.alpha);
  const double kappa = active ? std::exp(-c * spec.alpha) / c : 0.0;
  std::vector<double> old;
  return run_scheme(spec, options, normals, spec.initial_state(),
                    [&](std::vector<double>& z, double h, double db, SdePath& out) {
                      old = z;
                      double push = 0.0;
                      if (active) {
                        push = kappa * std::expm1(c * old[0]) * h;
                        if (!(std::abs(push) <= kExponentialClip)) {
                          push = push < 0.0 ? -kExponentialClip : kExponentialClip;
                          ++out.clip_events;
                        }
                      }
                      const double next = old.size() > 2 ? old[2] : 0.0;
                      z[0] = old[0] + (old[1] - old[0]) * h - push + db;
                      z[1] = old[1] + (next - old[1]) * h + push;
                      chain(z, old, 2, h);
                      return 0.0;
                    });
}

// Reflected system. `shift` is subtracted from the drift of coordinate 1 and
// `barrier` is the reflection level: (0, alpha) for Z, (alpha, 0) for Y.
SdePath super_scheme(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals,
                     double shift, double barrier, std::vector<double> init) {
  ReflectionState state(barrier);
  double free = init[0];
  double pushed = 0.0;
  std::vector<double> old;
  SdePath out = run_scheme(spec, options, normals, std::move(init),
                           [&](std::vector<double>& z, double h, double db, SdePath& path) {
                             old = z;
                             free = free + ((old[1] - old[0]) - shift) * h + db;
                             const auto s = state.push(free);
                             const double d_eta = s.pushing - pushed;
                             pushed = s.pushing;
                             path.complementarity += (barrier - s.constrained) * d_eta;
                             const double next = old.size() > 2 ? old[2] : 0.0;
                             z[0] = s.constrained;
                             z[1] = old[1] + (next - old[1]) * h + d_eta;
                             chain(z, old, 2, h);
                             return d_eta;
                           });
  if (barrier == kNoBarrier) out.complementarity = 0.0;
  return out;
}

}  // namespace

SdePath simulate_with_noise(const LimitSystemSpec& spec, const SdeOptions& options, std::span<const double> normals) {
  spec.validate();
  switch (spec.regime) {
    case RegimeKind::Sub: return sub_scheme(spec, options, normals);
    case RegimeKind::Critical: return critical_scheme(spec, options, normals);
    case RegimeKind::Super: return super_scheme(spec, options, normals, 0.0, spec.alpha, spec.initial_state());
    case RegimeKind::Ambiguous: break;
  }
  throw std::invalid_argument("limit system: regime is ambiguous");
}

namespace {

SdePath simulate_expecting(RegimeKind kind, const LimitSystemSpec& spec, const SdeOptions& options,
                           std::uint64_t seed, std::uint64_t replicate) {
  if (spec.regime != kind) throw std::invalid_argument(std::string("spec regime is not ") + to_string(kind));
  return simulate_with_noise(spec, options, draw_normals(seed, replicate, sde_steps(options)));
}

}  // namespace

SdePath simulate_subcritical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                             std::uint64_t replicate) {
  return simulate_expecting(RegimeKind::Sub, spec, options, seed, replicate);
}

SdePath simulate_critical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                          std::uint64_t replicate) {
  return simulate_expecting(RegimeKind::Critical, spec, options, seed, replicate);
}

SdePath simulate_supercritical(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                               std::uint64_t replicate) {
  return simulate_expecting(RegimeKind::Super, spec, options, seed, replicate);
}

SdePath simulate_limit(const LimitSystemSpec& spec, const SdeOptions& options, std::uint64_t seed,
                       std::uint64_t replicate) {
  return simulate_with_noise(spec, options, draw_normals(seed, replicate, sde_steps(options)));
}

std::pair<SdePath, SdePath> shared_noise_pair(const LimitSystemSpec& a, const LimitSystemSpec& b,
                                              const SdeOptions& options, std::uint64_t seed,
                                              std::uint64_t replicate) {
  const auto normals = draw_normals(seed, replicate, sde_steps(options));
  auto first = simulate_with_noise(a, options, normals);
  auto second = simulate_with_noise(b, options, normals);
  if (first.path.times != second.path.times) throw std::invalid_argument("shared_noise_pair: grid mismatch");
  return {std::move(first), std::move(second)};
}

SampledPath shift_reflection_at_one(const SampledPath& z, double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("reflection-at-one shift needs finite alpha");
  SampledPath y = z;
  for (double& v : y.values.at(0)) v -= alpha;
  return y;
}

SdePath simulate_reflection_at_one(const LimitSystemSpec& spec, const SdeOptions& options,
                                   std::span<const double> normals) {
  if (spec.regime != RegimeKind::Super) throw std::invalid_argument("reflection-at-one form needs the super regime");
  spec.validate();
  if (!std::isfinite(spec.alpha)) throw std::invalid_argument("reflection-at-one form needs finite alpha");
  auto init = spec.initial_state();
  init[0] -= spec.alpha;
  return super_scheme(spec, options, normals, spec.alpha, 0.0, std::move(init));
}

}  // namespace jsqd
