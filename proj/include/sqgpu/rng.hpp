#pragma once

// Reproducible random streams: splitmix64 for seeding, xoshiro256** for
// draws. The exact bit sequences are part of the file-format contract, so
// every derived quantity (Bernoulli flips, bounded integers) is specified
// here rather than delegated to <random> distributions.

#include <array>
#include <cstdint>
#include <limits>

namespace sqgpu {

/// Advances `state` by the golden-ratio increment and returns the mixed value.
std::uint64_t splitmix64_next(std::uint64_t& state) noexcept;

/// One splitmix64 step applied to `value` as a fresh state.
std::uint64_t splitmix64(std::uint64_t value) noexcept;

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;
  using State = std::array<std::uint64_t, 4>;

  /// State filled with four successive splitmix64 outputs of `seed`.
  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept;
  explicit Xoshiro256StarStar(const State& state) noexcept : s_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }
  result_type next() noexcept;

  /// Uniform in [0, bound) by rejecting the lowest (2^64 mod bound) words.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// true iff the next word is below floor(p * 2^64); p >= 1 always succeeds
  /// but still consumes a word.
  bool bernoulli(double p) noexcept;

  const State& state() const noexcept { return s_; }

  friend bool operator==(const Xoshiro256StarStar&, const Xoshiro256StarStar&) = default;

 private:
  State s_{};
};

/// Independent stream for trial `trial_index` of an experiment seeded with
/// `master_seed`: seed' = splitmix64(master ^ (trial * 0x9E3779B97F4A7C15)).
Xoshiro256StarStar derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

}  // namespace sqgpu
