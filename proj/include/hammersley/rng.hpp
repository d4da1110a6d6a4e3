#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace hammersley {

namespace detail {
// splitmix64 finalizer (Stafford mix13); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}  // namespace detail

/// Counter-based stream split: replica/arm streams are derived from the
/// master seed and up to two indices, so every replica is independently
/// reproducible regardless of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) {
  std::uint64_t s = detail::mix64(master + detail::kGamma);
  s = detail::mix64(s ^ detail::mix64(a + 0x510e527fade682d1ULL));
  s = detail::mix64(s ^ detail::mix64(b + 0x9b05688c2b3e6c1fULL));
  return s;
}

/// xoshiro256++ stream with splitmix-filled state. One private stream per
/// replica; never shared across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += detail::kGamma;
      word = detail::mix64(x);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate (> 0).
  double next_exponential(double rate) {
    return -std::log1p(-next_unit()) / rate;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace hammersley
