#include "jsqd/skorohod.hpp"

#include <cmath>
#include <stdexcept>

namespace jsqd {

ReflectionOutput reflect(const SampledPath& f, double alpha) {
  if (f.coords() != 1) throw std::invalid_argument("reflect: expects a single-coordinate path");
  f.validate();
  if (f.values[0].front() > alpha + kBarrierStartTolerance) {
    throw std::invalid_argument("reflect: f(0) exceeds the barrier");
  }
  ReflectionOutput out{SampledPath(f.times, 1), SampledPath(f.times, 1)};
  ReflectionState state(alpha);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto step = state.push(f.values[0][j]);
    out.constrained.values[0][j] = step.constrained;
    out.pushing.values[0][j] = step.pushing;
  }
  return out;
}

double complementarity(const SampledPath& constrained, const SampledPath& pushing, double alpha) {
  if (alpha == kNoBarrier) return 0.0;
  const auto& c = constrained.values.at(0);
  const auto& p = pushing.values.at(0);
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    sum += (alpha - c[j]) * (p[j] - prev);
    prev = p[j];
  }
  return sum;
}

}  // namespace jsqd
