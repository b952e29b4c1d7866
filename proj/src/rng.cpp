#include "sqgpu/rng.hpp"

#include <cmath>

namespace sqgpu {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t value) noexcept { return splitmix64_next(value); }

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) noexcept {
  for (auto& word : s_) word = splitmix64_next(seed);
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256StarStar::uniform_below(std::uint64_t bound) noexcept {
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t floor_reject = (0 - bound) % bound;
  std::uint64_t x = next();
  while (x < floor_reject) x = next();
  return x % bound;
}

bool Xoshiro256StarStar::bernoulli(double p) noexcept {
  const std::uint64_t x = next();
  if (p >= 1.0) return true;
  if (!(p > 0.0)) return false;
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return x < threshold;
}

Xoshiro256StarStar derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
  return Xoshiro256StarStar(splitmix64(master_seed ^ (trial_index * kGolden)));
}

}  // namespace sqgpu
