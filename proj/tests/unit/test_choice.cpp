#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "jsqd/choice.hpp"
#include "jsqd/rng.hpp"

using namespace jsqd;

TEST_CASE("beta small examples") {
  const SystemParams p{4, 2, 0.5};
  CHECK(beta(p, 1.0) == 1.0);
  CHECK(beta(p, 0.25) == 0.0);
  CHECK(beta(p, 0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(beta_prime(p, 0.2) == 0.0);
  CHECK(beta_prime(p, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta_prime(p, 1.0) == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("gamma examples") {
  CHECK(gamma(SystemParams{10, 2, 0.5}, 0.5) == 0.25);
  CHECK(gamma(SystemParams{1000, 100, 0.5}, 0.9) == doctest::Approx(std::exp(100 * std::log(0.9))).epsilon(1e-13));
  for (std::int64_t d : {1, 7, 60, 500}) CHECK(gamma(SystemParams{1000, d, 0.5}, 1.0) == 1.0);
}

TEST_CASE("domain errors") {
  const SystemParams p{10, 3, 0.5};
  CHECK_THROWS_AS(beta(p, 1.1), std::domain_error);
  CHECK_THROWS_AS(beta(p, -0.01), std::domain_error);
  CHECK(beta(p, 1.0 + 1e-13) == 1.0);
  CHECK_THROWS_AS(SystemParams({5, 6, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams({5, 0, 0.5}).validate(), std::invalid_argument);
  CHECK_NOTHROW(SystemParams({5, 5, 0.0}).validate());
}

TEST_CASE("beta_prime matches central differences away from kinks") {
  RandomStream rs(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::int64_t>(10 + rs.uniform_int(5000));
    const auto d = static_cast<std::int64_t>(1 + rs.uniform_int(static_cast<std::uint64_t>(std::min<std::int64_t>(n, 120))));
    const SystemParams p{n, d, 0.5};
    const double lo = static_cast<double>(d) / static_cast<double>(n) + 1e-3;
    if (lo >= 0.99) continue;
    const double x = lo + (0.99 - lo) * rs.uniform();
    const double h = 1e-6;
    const double fd = (beta(p, x + h) - beta(p, x - h)) / (2 * h);
    CHECK(beta_prime(p, x) == doctest::Approx(fd).epsilon(1e-5).scale(1e-12));
  }
}

TEST_CASE("log-space switch is continuous") {
  for (std::int64_t d : {kLogSpaceThreshold, kLogSpaceThreshold + 1}) {
    const SystemParams p{2000, d, 0.5};
    for (double x : {0.5, 0.9, 0.97, 0.999}) {
      long double ref = 1.0L;
      for (std::int64_t i = 0; i < d; ++i) {
        ref *= (static_cast<long double>(x) - static_cast<long double>(i) / 2000.0L) /
               (1.0L - static_cast<long double>(i) / 2000.0L);
      }
      CHECK(beta(p, x) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
      CHECK(std::exp(log_beta(p, x)) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lattice table agrees with beta") {
  for (auto [n, d] : {std::pair<std::int64_t, std::int64_t>{7, 3}, {100, 1}, {500, 500}, {1000, 80}}) {
    const LatticeChoiceTable t(n, d);
    const SystemParams p{n, d, 0.5};
    for (std::int64_t m = 0; m <= n; ++m) {
      const double x = static_cast<double>(m) / static_cast<double>(n);
      CHECK(t[m] == doctest::Approx(beta(p, x)).epsilon(1e-12).scale(1e-300));
      if (m < d) CHECK(t[m] == 0.0);
    }
  }
  CHECK_THROWS(LatticeChoiceTable(3, 4));
}

TEST_CASE("evaluate_choice invariants") {
  RandomStream rs(9, 0);
  for (int k = 0; k < 500; ++k) {
    const auto n = static_cast<std::int64_t>(2 + rs.uniform_int(100000));
    const auto d = static_cast<std::int64_t>(1 + rs.uniform_int(static_cast<std::uint64_t>(std::min<std::int64_t>(n - 1, 400))));
    const SystemParams p{n, d, 0.5};
    const auto e = evaluate_choice(p, rs.uniform());
    CHECK(e.beta >= 0.0);
    CHECK(e.beta <= e.gamma * (1 + 1e-12));
    CHECK(e.gamma <= 1.0);
    CHECK(e.beta_prime >= 0.0);
  }
}

TEST_CASE("extended beta") {
  const SystemParams p{100, 3, 0.5};
  CHECK(beta_extended(p, -0.5) == 0.0);
  CHECK(beta_extended(p, 1.2) > 1.0);
  CHECK(beta_prime_extended(p, -1.0) == 0.0);
  CHECK(beta_extended(p, 0.6) == beta(p, 0.6));
}

TEST_CASE("asymptotic report") {
  const auto r = asymptotic_report(SystemParams{1000000, 10, 0.5}, 0.5);
  CHECK(r.bound_applicable);
  CHECK(r.sup_log_error <= r.log_bound);
  CHECK(r.log_bound == doctest::Approx(2.0 * 1e-4));

  const auto small = asymptotic_report(SystemParams{4, 4, 0.5}, 0.5);
  CHECK(small.sup_ratio_error > 0.5);

  const SystemParams q{10000, 100, 0.5};
  const auto big = asymptotic_report(q, 0.5);
  const double eps = 2 * std::log(100.0) / 100.0;
  CHECK(big.zero_window_end == doctest::Approx(1 - eps));
  CHECK(big.sup_beta_low <= std::pow(1 - eps, 100.0));
  CHECK(big.sup_beta_low < 1.5e-4);
  CHECK_THROWS(asymptotic_report(q, 1.5));
}
