#include "duelgrad/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "duelgrad/error.hpp"

namespace duelgrad {

MomentAccumulator::MomentAccumulator(std::size_t dim)
    : MomentAccumulator(dim, Vector::Zero(static_cast<Eigen::Index>(dim))) {}

MomentAccumulator::MomentAccumulator(std::size_t dim, Vector shift)
    : shift_(std::move(shift)), sums_(dim), squares_(dim),
      scratch_(static_cast<Eigen::Index>(dim)) {
  require_dim(shift_, dim, "accumulator shift");
}

void MomentAccumulator::add(const Eigen::Ref<const Vector>& sample) {
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    const double v = sample[static_cast<Eigen::Index>(i)] - shift_[static_cast<Eigen::Index>(i)];
    sums_[i].add(v);
    squares_[i].add(v * v);
  }
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.dim() != dim()) throw Error(ErrorCode::kDimensionMismatch, "accumulator dimension");
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    sums_[i].merge(other.sums_[i]);
    squares_[i].merge(other.squares_[i]);
  }
  count_ += other.count_;
}

Vector MomentAccumulator::mean() const {
  Vector out(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out[k] = count_ == 0 ? 0.0 : shift_[k] + sums_[i].value() / static_cast<double>(count_);
  }
  return out;
}

Vector MomentAccumulator::std_error() const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim()));
  if (count_ < 2) return out;
  const double n = static_cast<double>(count_);
  for (std::size_t i = 0; i < sums_.size(); ++i) {
    const double m = sums_[i].value() / n;
    const double var = std::max(0.0, (squares_[i].value() - n * m * m) / (n - 1.0));
    out[static_cast<Eigen::Index>(i)] = std::sqrt(var / n);
  }
  return out;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  unsigned jobs) {
  if (count == 0) return;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(jobs == 0 ? default_jobs() : jobs, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

MomentAccumulator run_batches(std::uint64_t n, std::uint64_t seed, const Vector& shift,
                              const BatchKernel& kernel, unsigned jobs) {
  const std::size_t dim = static_cast<std::size_t>(shift.size());
  const std::size_t batches = static_cast<std::size_t>((n + kMonteCarloBatch - 1) / kMonteCarloBatch);
  std::vector<MomentAccumulator> partial(batches, MomentAccumulator(dim, shift));
  parallel_for(
      batches,
      [&](std::size_t b) {
        Rng rng = Rng::stream(seed, b);
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMonteCarloBatch;
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kMonteCarloBatch, n - begin));
        kernel(rng, count, partial[b]);
      },
      jobs);
  MomentAccumulator total(dim, shift);
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace duelgrad
