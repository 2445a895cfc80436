#include <doctest.h>

#include <cmath>
#include <limits>

#include "jsqd/diffusion.hpp"
#include "jsqd/ensemble.hpp"
#include "jsqd/stats.hpp"

using namespace jsqd;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

LimitSystemSpec make(RegimeKind kind, std::size_t r, double alpha) {
  LimitSystemSpec s;
  s.regime = kind;
  s.r = r;
  s.alpha = alpha;
  return s;
}
}  // namespace

TEST_CASE("spec validation") {
  auto s = make(RegimeKind::Sub, 2, 0.0);
  s.k = 2;
  CHECK_THROWS(s.validate());
  auto c = make(RegimeKind::Critical, 3, 0.0);
  c.c = 0.0;
  CHECK_THROWS(c.validate());
  auto sup = make(RegimeKind::Super, 2, 0.5);
  sup.z = {0.7, 0.0};
  CHECK_THROWS(sup.validate());
  auto y = make(RegimeKind::Sub, 4, 0.2);
  y.k = 2;
  y.z = {0.3, -0.1, 0.05};
  CHECK(y.dimension() == 3);
  const auto init = y.initial_state();
  CHECK(init[0] == doctest::Approx(0.2));
  CHECK(init[1] == 0.05);
}

TEST_CASE("zero noise keeps the origin fixed") {
  SdeOptions opt;
  opt.t_end = 1.0;
  opt.dt = 1e-2;
  const std::vector<double> zeros(sde_steps(opt), 0.0);
  for (auto spec : {make(RegimeKind::Sub, 3, 0.3), make(RegimeKind::Critical, 3, 0.5), make(RegimeKind::Super, 3, 0.0)}) {
    const auto p = simulate_with_noise(spec, opt, zeros);
    for (const auto& row : p.path.values) {
      for (double v : row) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("sub regime with alpha = 0 and k > 1 is scaled Brownian motion") {
  auto spec = make(RegimeKind::Sub, 4, 0.0);
  spec.k = 2;
  SdeOptions opt;
  opt.t_end = 1.0;
  opt.dt = 1e-3;
  const auto normals = draw_normals(5, 0, sde_steps(opt));
  const auto p = simulate_with_noise(spec, opt, normals);
  double b = 0.0;
  for (std::size_t j = 0; j < normals.size(); ++j) {
    b += std::sqrt(2.0 * opt.dt) * normals[j];
    CHECK(p.path.values[0][j + 1] == doctest::Approx(b).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("critical exponential drift sign and clipping") {
  auto spec = make(RegimeKind::Critical, 2, 0.0);
  spec.c = 1.0;
  spec.z = {3.0, 0.0};
  SdeOptions opt;
  opt.t_end = 1e-3;
  opt.dt = 1e-3;
  const std::vector<double> zero(1, 0.0);
  auto p = simulate_with_noise(spec, opt, zero);
  CHECK(p.path.values[0][1] < 3.0);
  CHECK(p.clip_events == 0);
  spec.z = {20.0, 0.0};
  p = simulate_with_noise(spec, opt, zero);
  CHECK(p.clip_events == 1);
  CHECK(20.0 - p.path.values[0][1] <= kExponentialClip + 20.0 * opt.dt + 1e-12);
}

TEST_CASE("super regime barrier and shift") {
  const auto spec = make(RegimeKind::Super, 3, 0.0);
  SdeOptions opt;
  opt.t_end = 2.0;
  opt.dt = 1e-3;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto p = simulate_supercritical(spec, opt, 3, r);
    for (double v : p.path.values[0]) CHECK(v <= 0.0);
    CHECK(p.complementarity == 0.0);
    for (std::size_t j = 1; j < p.eta.size(); ++j) CHECK(p.eta[j] >= p.eta[j - 1]);
  }
  const auto a = make(RegimeKind::Super, 3, 0.4);
  const auto normals = draw_normals(3, 1, sde_steps(opt));
  const auto z = simulate_with_noise(a, opt, normals);
  const auto y = simulate_reflection_at_one(a, opt, normals);
  const auto shifted = shift_reflection_at_one(z.path, 0.4);
  for (std::size_t j = 0; j < y.path.size(); ++j) {
    CHECK(y.path.values[0][j] <= 0.0);
    CHECK(y.path.values[0][j] == doctest::Approx(shifted.values[0][j]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("shared noise identities") {
  SdeOptions opt;
  opt.t_end = 1.0;
  opt.dt = 1e-3;
  auto sub = make(RegimeKind::Sub, 3, 0.0);
  auto crit = make(RegimeKind::Critical, 3, kInf);
  auto sup = make(RegimeKind::Super, 3, kInf);
  for (std::uint64_t r = 0; r < 5; ++r) {
    const auto [a, b] = shared_noise_pair(sub, crit, opt, 8, r);
    CHECK(a.path.values == b.path.values);
    const auto [c, d] = shared_noise_pair(crit, sup, opt, 8, r);
    CHECK(c.path.values == d.path.values);
    const auto [e, f] = shared_noise_pair(crit, crit, opt, 8, r);
    CHECK(e.path.values == f.path.values);
    CHECK(e.path.values == simulate_critical(crit, opt, 8, r).path.values);
  }
  opt.t_end = 0.1;
  auto far = make(RegimeKind::Super, 3, 1e6);
  const auto [g, h] = shared_noise_pair(far, sup, opt, 8, 0);
  CHECK(g.path.values == h.path.values);
}

TEST_CASE("reproducible from seed") {
  const auto spec = make(RegimeKind::Critical, 3, 0.5);
  SdeOptions opt;
  opt.t_end = 0.5;
  opt.dt = 1e-3;
  CHECK(simulate_limit(spec, opt, 4, 2).path.values == simulate_limit(spec, opt, 4, 2).path.values);
  CHECK(simulate_limit(spec, opt, 4, 2).path.values != simulate_limit(spec, opt, 4, 3).path.values);
}

TEST_CASE("weak first-order self-convergence") {
  auto spec = make(RegimeKind::Critical, 3, 0.5);
  spec.z = {0.5, 0.0, 0.0};
  SdeOptions coarse;
  coarse.t_end = 1.0;
  coarse.dt = 2e-3;
  coarse.record_every = 50;
  SdeOptions fine = coarse;
  fine.dt = 1e-3;
  fine.record_every = 100;
  const std::vector<double> t{1.0};
  const auto a = sde_ensemble(spec, coarse, 21, 4000, t, Execution::Parallel);
  const auto b = sde_ensemble(spec, fine, 22, 4000, t, Execution::Parallel);
  const auto& xa = a.values[0][0];
  const auto& xb = b.values[0][0];
  const double se = std::sqrt(variance(xa) / xa.size() + variance(xb) / xb.size());
  CHECK(std::abs(mean(xa) - mean(xb)) < 3 * se);
}

TEST_CASE("sde ensemble serial equals parallel") {
  setenv("JSQD_WORKERS", "4", 1);
  const auto spec = make(RegimeKind::Super, 3, 0.5);
  SdeOptions opt;
  opt.t_end = 1.0;
  opt.dt = 1e-3;
  const std::vector<double> t{0.5, 1.0};
  const auto a = sde_ensemble(spec, opt, 3, 64, t, Execution::Serial);
  const auto b = sde_ensemble(spec, opt, 3, 64, t, Execution::Parallel);
  CHECK(a.values == b.values);
  CHECK(a.max_z1 == b.max_z1);
  CHECK(a.max_z1 <= 0.5);
  CHECK_THROWS(sde_ensemble(spec, opt, 3, 4, std::vector<double>{0.00025}, Execution::Serial));
  unsetenv("JSQD_WORKERS");
}
