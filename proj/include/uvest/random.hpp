#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace uvest {

// SplitMix64 step. Used to expand a (seed, index) pair into generator state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A seeded random stream (xoshiro256**).
///
/// A stream is fully determined by its (seed, index) pair, so replicate k of a
/// simulation can always be regenerated on its own, in any order and on any
/// thread. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0) noexcept {
    std::uint64_t sm = seed;
    const std::uint64_t key = splitmix64(sm) ^ (index * 0xD1342543DE82EF95ULL);
    std::uint64_t mix = key;
    for (auto& word : state_) {
      word = splitmix64(mix);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 1;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace uvest
