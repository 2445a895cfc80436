#include <doctest.h>

#include "jsqd/harness.hpp"
#include "jsqd/io.hpp"

using namespace jsqd;

namespace {
FluctuationConfig small_critical() {
  FluctuationConfig c;
  c.d_expr = "sqrt(n)";
  c.lambda_expr = "1 - log(sqrt(n))/sqrt(n)";
  c.n = 900;
  c.expected = RegimeKind::Critical;
  c.times = {0.5, 1.0};
  c.prelimit_replicates = 40;
  c.limit_replicates = 80;
  c.limit_dt = 2e-3;
  c.grid_dt = 0.02;
  c.seed = 3;
  return c;
}
}  // namespace

TEST_CASE("regime gate") {
  auto c = small_critical();
  c.expected = RegimeKind::Super;
  try {
    run_fluctuation_experiment(c);
    FAIL("expected a regime mismatch");
  } catch (const RegimeMismatch& e) {
    CHECK(e.regime().kind == RegimeKind::Critical);
  }
}

TEST_CASE("fluctuation reports are reproducible") {
  const auto c = small_critical();
  const auto a = run_fluctuation_experiment(c);
  const auto b = run_fluctuation_experiment(c);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.cells.size() == 4);
  REQUIRE(a.barrier);
  CHECK(a.barrier->holds);
  CHECK(a.barrier->gad_residual == 0);
  CHECK(a.bonferroni_threshold == doctest::Approx(0.0025));
  auto serial = c;
  serial.exec = Execution::Serial;
  CHECK(to_json(run_fluctuation_experiment(serial)).dump() == to_json(a).dump());
}

TEST_CASE("super regime barrier is exact") {
  FluctuationConfig c;
  c.d_expr = "n";
  c.lambda_expr = "0.99";
  c.n = 10000;
  c.expected = RegimeKind::Super;
  c.prelimit_replicates = 20;
  c.limit_replicates = 50;
  c.times = {1.0};
  c.coords = {1};
  const auto r = run_fluctuation_experiment(c);
  CHECK(r.barrier->bound == doctest::Approx(1.0));
  CHECK(r.barrier->max_z1 <= r.barrier->bound);
  CHECK(r.barrier->holds);
}

TEST_CASE("pure-death law of large numbers") {
  LlnConfig c;
  c.params = SystemParams{10000, 2, 0.0};
  c.init = InitSpec::parse("fixed:1");
  c.replicates = 5;
  c.t_end = 3.0;
  const auto block = run_lln_experiment(c);
  CHECK(block.max <= 0.05);
  const auto rep = lln_report(block, 0.05);
  CHECK(rep.passed);
  CHECK(rep.kind == "lln");
}

TEST_CASE("limit spec matching") {
  LimitRegime reg;
  reg.kind = RegimeKind::Sub;
  reg.k = 2;
  reg.alpha = 0.7;
  const auto s = limit_spec_for(reg, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 5);
  CHECK(s.k == 2);
  CHECK(s.z.size() == 5);
  CHECK(s.alpha == 0.7);
}
