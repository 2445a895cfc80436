#include <doctest.h>

#include <limits>

#include "jsqd/rng.hpp"
#include "jsqd/skorohod.hpp"

using namespace jsqd;

namespace {
SampledPath single(std::vector<double> values) {
  std::vector<double> grid(values.size());
  for (std::size_t j = 0; j < grid.size(); ++j) grid[j] = static_cast<double>(j);
  SampledPath p(grid, 1);
  p.values[0] = std::move(values);
  return p;
}
}  // namespace

TEST_CASE("batch reflection examples") {
  const auto ramp = reflect(single({0.0, 0.25, 0.5, 0.75, 1.0}), 0.0);
  CHECK(ramp.constrained.values[0] == std::vector<double>(5, 0.0));
  CHECK(ramp.pushing.values[0] == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

  const auto flat = reflect(single({0.3, 0.3, 0.3}), 1.0);
  CHECK(flat.constrained.values[0] == std::vector<double>{0.3, 0.3, 0.3});
  CHECK(flat.pushing.values[0] == std::vector<double>{0.0, 0.0, 0.0});

  const auto r = reflect(single({0.0, 2.0, 0.5}), 1.0);
  CHECK(r.pushing.values[0] == std::vector<double>{0.0, 1.0, 1.0});
  CHECK(r.constrained.values[0] == std::vector<double>{0.0, 1.0, -0.5});

  CHECK_THROWS(reflect(single({1.5, 0.0}), 1.0));
  const auto inf = reflect(single({5.0, -2.0}), kNoBarrier);
  CHECK(inf.constrained.values[0] == std::vector<double>{5.0, -2.0});
}

TEST_CASE("streaming reflection") {
  ReflectionState s(1.0);
  auto a = s.push(0.0);
  CHECK(a.constrained == 0.0);
  CHECK(a.pushing == 0.0);
  s.push(2.0);
  a = s.push(0.5);
  CHECK(a.constrained == -0.5);
  CHECK(a.pushing == 1.0);

  ReflectionState free(kNoBarrier);
  CHECK(free.push(7.0).constrained == 7.0);
  CHECK(free.push(7.0).pushing == 0.0);
}

TEST_CASE("increment form") {
  auto s = reflect_increment(1.0, 0.0, 1.0);
  CHECK(s.constrained == 1.0);
  CHECK(s.pushed == 0.0);
  s = reflect_increment(0.9, 0.3, 1.0);
  CHECK(s.constrained == 1.0);
  CHECK(s.pushed == doctest::Approx(0.2));
  s = reflect_increment(0.5, -0.2, 1.0);
  CHECK(s.constrained == doctest::Approx(0.3));
  CHECK(s.pushed == 0.0);
}

TEST_CASE("reflection properties on random walks") {
  RandomStream rs(1, 0);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> v(300);
    const double alpha = rs.normal();
    v[0] = alpha - rs.uniform();
    for (std::size_t j = 1; j < v.size(); ++j) v[j] = v[j - 1] + 0.2 * rs.normal();
    const auto out = reflect(single(v), alpha);
    CHECK(complementarity(out.constrained, out.pushing, alpha) == 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      CHECK(out.constrained.values[0][j] <= alpha);
      if (j > 0) CHECK(out.pushing.values[0][j] >= out.pushing.values[0][j - 1]);
      CHECK(out.constrained.values[0][j] + out.pushing.values[0][j] == doctest::Approx(v[j]).epsilon(1e-12));
    }
  }
}
