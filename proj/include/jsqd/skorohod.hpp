#pragma once

#include <limits>

#include "jsqd/path.hpp"

namespace jsqd {

/// Barrier value meaning "no reflection".
inline constexpr double kNoBarrier = std::numeric_limits<double>::infinity();

/// Tolerance on the precondition f(0) <= alpha.
inline constexpr double kBarrierStartTolerance = 1e-12;

/// Streaming one-dimensional Skorohod map with upper barrier alpha.
///
/// pushing(t_j) = max_{s <= j} (f(t_s) - alpha)^+ and constrained = f - pushing.
/// Paths are piecewise constant between samples. On a step where pushing
/// strictly grows the constrained value is pinned to alpha itself, which makes
/// sum_j (alpha - constrained_j) * (pushing_j - pushing_{j-1}) exactly zero.
class ReflectionState {
 public:
  struct Step {
    double constrained;
    double pushing;
  };

  explicit ReflectionState(double alpha) : alpha_(alpha) {}

  Step push(double f) {
    if (alpha_ == kNoBarrier) return {f, 0.0};
    const double excess = f - alpha_;
    if (excess > pushing_) {
      pushing_ = excess;
      return {alpha_, pushing_};
    }
    const double c = f - pushing_;
    return {c < alpha_ ? c : alpha_, pushing_};
  }

  double alpha() const { return alpha_; }
  double pushing() const { return pushing_; }

 private:
  double alpha_;
  double pushing_ = 0.0;
};

/// Increment form of the same map for integrators that carry the constrained
/// value instead of the free path: x' = min(x + delta, alpha) and the pushing
/// increment is (x + delta - alpha)^+. Agrees with ReflectionState up to
/// rounding; exact when the state sits on the barrier with zero net drift.
struct IncrementStep {
  double constrained;
  double pushed;
};

inline IncrementStep reflect_increment(double x, double delta, double alpha) {
  const double excess = (x - alpha) + delta;
  if (excess > 0.0) return {alpha, excess};
  const double y = x + delta;
  return {y < alpha ? y : alpha, 0.0};
}

struct ReflectionOutput {
  SampledPath constrained;
  SampledPath pushing;
};

/// Batch form over a single-coordinate path. Rejects f(0) > alpha + 1e-12.
ReflectionOutput reflect(const SampledPath& f, double alpha);

/// sum_j (alpha - constrained_j) * (pushing_j - pushing_{j-1}).
double complementarity(const SampledPath& constrained, const SampledPath& pushing, double alpha);

}  // namespace jsqd
