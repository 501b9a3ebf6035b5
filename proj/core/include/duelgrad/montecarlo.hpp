#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "duelgrad/geometry.hpp"
#include "duelgrad/random.hpp"

namespace duelgrad {

/// Kahan-compensated running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  void merge(const KahanSum& other) noexcept {
    add(other.sum_);
    add(-other.carry_);
  }
  double value() const noexcept { return sum_ - carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Per-coordinate first and second moments of samples shifted by a fixed
/// reference. Samples equal to the reference contribute exact zeros, so a
/// degenerate (constant) sample reports its value with zero standard error.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t dim);
  MomentAccumulator(std::size_t dim, Vector shift);

  void add(const Eigen::Ref<const Vector>& sample);
  void merge(const MomentAccumulator& other);

  std::size_t dim() const { return sums_.size(); }
  std::uint64_t count() const { return count_; }
  Vector mean() const;
  /// Sample standard deviation divided by sqrt(n).
  Vector std_error() const;

 private:
  Vector shift_;
  std::vector<KahanSum> sums_;
  std::vector<KahanSum> squares_;
  std::uint64_t count_ = 0;
  Vector scratch_;
};

/// Worker count used when a caller passes 0.
unsigned default_jobs();

/// Calls task(i) for i in [0, count) on up to `jobs` threads (0 = default).
/// Exceptions from tasks are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  unsigned jobs = 0);

inline constexpr std::size_t kMonteCarloBatch = std::size_t{1} << 16;

/// Fills `acc` with `count` samples drawn from `rng`.
using BatchKernel = std::function<void(Rng& rng, std::size_t count, MomentAccumulator& acc)>;

/// Splits n samples into fixed-size batches, each with its own stream derived
/// from `seed`, and merges them in batch order. The result depends only on
/// (n, seed), never on the thread count.
MomentAccumulator run_batches(std::uint64_t n, std::uint64_t seed, const Vector& shift,
                              const BatchKernel& kernel, unsigned jobs = 0);

}  // namespace duelgrad
