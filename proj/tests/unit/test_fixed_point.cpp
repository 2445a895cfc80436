#include <doctest.h>

#include <cmath>
#include <limits>

#include "jsqd/expr.hpp"
#include "jsqd/fixed_point.hpp"

using namespace jsqd;

TEST_CASE("mu sequence small example") {
  const SystemParams p{4, 2, 0.5};
  const auto mu = mu_sequence(p, 1e-12);
  REQUIRE(mu.size() == 2);
  CHECK(mu(1) == 0.5);
  CHECK(mu(2) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(mu(3) == 0.0);
  CHECK(mu.tail == 0.0);
  CHECK(drift_residual(p, mu.mu).l1 <= 1e-12);
  CHECK(mu_sequence(SystemParams{100, 3, 1e-3})(1) == 1e-3);
}

TEST_CASE("mu_2 tracks the with-replacement surrogate") {
  const SystemParams p{10000, 100, 0.954};
  const auto mu = mu_sequence(p);
  const double surrogate = 0.954 * std::pow(0.954, 100);
  // beta <= gamma and log(gamma/beta) is O(d^2/n)
  CHECK(mu(2) <= surrogate);
  CHECK(std::log(surrogate / mu(2)) <= 1.0);
}

TEST_CASE("drift residual examples") {
  const SystemParams p{10, 2, 0.7};
  const auto r = drift_residual(p, std::vector<double>{});
  REQUIRE(r.residual.size() == 1);
  CHECK(r.residual[0] == 0.7);

  // f_1 with d = n and lambda = 1: no inflow into level 1, outflow 1, inflow 1 into level 2
  const SystemParams q{5, 5, 1.0};
  const auto f = drift_residual(q, std::vector<double>{1.0});
  REQUIRE(f.residual.size() == 2);
  CHECK(f.residual[0] == -1.0);
  CHECK(f.residual[1] == 1.0);
  CHECK(f.l1 == 2.0);
}

TEST_CASE("t drift") {
  const auto p = ParameterRule::parse("100", "1 - log(100)/100").at(10000);
  const auto mu = mu_sequence(p);
  CHECK(t_drift(mu, 1, 0.0) == 0.0);
  CHECK(t_drift(mu, 0, 1.7) == 0.0);
  for (double z : {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0}) {
    CHECK(t_drift(mu, 1, z) * z >= 0.0);
    CHECK(t_drift(mu, 2, z) * z >= 0.0);
  }
  CHECK(alpha_n(p) == doctest::Approx(0.0).scale(1.0));
  const double a = alpha_n(p);
  CHECK(t_drift_exponential(p, a, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("fluid fixed points and m(x)") {
  CHECK(fluid_fixed_point(2, 0.3) == std::vector<double>{1.0, 1.0, 0.3});
  CHECK(fluid_fixed_point(0) == std::vector<double>{});
  CHECK(min_queue_length(std::vector<double>{1.0, 1.0, 0.5}) == 2);
  CHECK(min_queue_length(std::vector<double>{0.9}) == 0);
  CHECK(min_queue_length(std::vector<double>{1.0, 1.0}) == 2);
}

TEST_CASE("regime classification examples") {
  const auto crit = classify_regime(ParameterRule::parse("100", "1 - log(100)/100"), 10000);
  CHECK(crit.kind == RegimeKind::Critical);
  CHECK(crit.c == doctest::Approx(1.0));
  CHECK(crit.alpha == doctest::Approx(0.0).scale(1.0));

  const auto sup = classify_regime(ParameterRule::parse("n", "1 - 1/sqrt(n)"), 10000);
  CHECK(sup.kind == RegimeKind::Super);
  CHECK(sup.alpha == doctest::Approx(1.0 - std::log(1e4) / 100).epsilon(1e-9));
  CHECK(sup.alpha == doctest::Approx(0.9079).epsilon(1e-4));

  // d = log n and (1 - lambda) d^2 = log d
  const std::int64_t n = 1000000;
  const auto d = static_cast<std::int64_t>(std::llround(std::log(1e6)));
  const double dd = static_cast<double>(d);
  const auto sub = classify_regime(SystemParams{n, d, 1.0 - std::log(dd) / (dd * dd)});
  CHECK(sub.kind == RegimeKind::Sub);
  CHECK(sub.k == 2);
  CHECK(sub.alpha == doctest::Approx(1.0).epsilon(0.05));

  // inside the dead band around a cutoff
  const auto amb = classify_regime(SystemParams{10000, 50, 0.9});
  CHECK(amb.kind == RegimeKind::Ambiguous);
  CHECK(parse_regime("super") == RegimeKind::Super);
  CHECK_THROWS(parse_regime("hyper"));
}

TEST_CASE("log approximation report") {
  const auto r = mu_log_approx_check(SystemParams{1000000, 10, 0.999}, 2);
  CHECK(std::exp(r.log_error) <= 1.1);
  for (double v : r.derivative_ratios) CHECK((v >= 0.9 && v <= 1.1));
  for (double v : r.ratios_to_first) CHECK((v >= 0.9 && v <= 1.1));

  const auto edge = mu_log_approx_check(SystemParams{4, 2, 0.5}, 1);
  CHECK(edge.log_error == doctest::Approx(std::abs(std::log(1.0 / 12.0) - 3 * std::log(0.5))));
  CHECK_THROWS(mu_log_approx_check(SystemParams{4, 2, 0.5}, 2));
}
