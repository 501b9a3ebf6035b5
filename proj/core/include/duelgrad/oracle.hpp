#pragma once

#include <cstdint>

#include "duelgrad/geometry.hpp"
#include "duelgrad/objectives.hpp"
#include "duelgrad/random.hpp"
#include "duelgrad/transfer.hpp"

namespace duelgrad {

/// +1 with probability (mu + 1) / 2, else -1. |mu| in (1, 1 + 1e-12] is
/// clamped; anything larger throws kInvalidMean.
int signed_bernoulli(double mu, Rng& rng);

/// Noisy pairwise comparison channel. duel(x, y) is +1 with mean
/// rho(f(x) - f(y)). The objective is evaluated on all of R^d: perturbed query
/// points may leave the feasible domain.
class ComparisonOracle {
 public:
  ComparisonOracle(const Objective& objective, const TransferFunction& transfer, Rng rng)
      : objective_(&objective), transfer_(&transfer), rng_(std::move(rng)) {}

  int duel(const Vector& x, const Vector& y);

  std::uint64_t query_count() const { return queries_; }
  const Objective& objective() const { return *objective_; }
  const TransferFunction& transfer() const { return *transfer_; }

 private:
  const Objective* objective_;
  const TransferFunction* transfer_;
  Rng rng_;
  std::uint64_t queries_ = 0;
};

}  // namespace duelgrad
