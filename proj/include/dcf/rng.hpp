#pragma once

#include <cmath>
#include <cstdint>

namespace dcf {

// Self-contained xoshiro256** generator. The standard library engines are
// reproducible but the distributions are not, and sweep output must be
// byte-identical for a fixed seed, so both the generator and the bounded
// draws live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // Expand the seed with splitmix64.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Exact uniform integer in [0, bound); Lemire multiply-reject.
  std::uint64_t uniform_below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in (0, 1].
  double unit_open_zero() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Exponential inter-arrival time in integer microseconds, mean 1e6/rate.
  std::int64_t exponential_us(double rate_per_second) {
    const double dt_us = -std::log(unit_open_zero()) * (1e6 / rate_per_second);
    const auto rounded = static_cast<std::int64_t>(std::llround(dt_us));
    return rounded < 1 ? 1 : rounded;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace dcf
