#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "jsqd/rng.hpp"
#include "jsqd/stats.hpp"

using namespace jsqd;

TEST_CASE("philox known answers") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ_c = differ_c || x != c.next_u64();
    differ_d = differ_d || x != d.next_u64();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
}

TEST_CASE("distribution moments") {
  RandomStream rs(7, 3);
  constexpr int N = 200000;
  std::vector<double> u(N), z(N), e(N);
  for (int i = 0; i < N; ++i) {
    u[i] = rs.uniform();
    z[i] = rs.normal();
    e[i] = rs.exponential();
    CHECK_FALSE((u[i] <= 0.0 || u[i] > 1.0));
  }
  CHECK(mean(u) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(mean(z) == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(variance(z) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(mean(e) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("uniform_int range and balance") {
  RandomStream rs(11, 0);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rs.uniform_int(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK(rs.uniform_int(1) == 0);
}
