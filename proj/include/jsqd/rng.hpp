#pragma once

#include <array>
#include <cstdint>

namespace jsqd {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// splitmix64 finaliser; used to derive independent seeds for separate
/// purposes (e.g. prelimit vs limit side of one experiment).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// One reproducible stream: key = seed, counter = (block index, stream id).
/// Replicate r of an ensemble always uses stream id r, so results do not
/// depend on which thread ran which replicate.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform on (0,1]: ((u >> 11) + 1) * 2^-53.
  double uniform();
  /// Uniform on (0,1) with 53-bit midpoints; safe for quantile inversion.
  double uniform_open();
  /// Standard normal by inversion: -sqrt(2) erfc^{-1}(2u).
  double normal();
  /// Exp(1) by inversion.
  double exponential();
  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-and-reject.
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int used_ = 2;
};

}  // namespace jsqd
