#pragma once

#include <cstdint>
#include <random>

namespace duelgrad {

/// SplitMix64 finalizer. Used to derive statistically independent stream seeds
/// from a base seed and a counter.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `base`. Distinct (base, index) pairs map to
/// distinct engines without the collisions of `base + index` arithmetic.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Seeded random source. Each run, trial, or Monte-Carlo batch owns one.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t base, std::uint64_t index) {
    return Rng(derive_seed(base, index));
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace duelgrad
