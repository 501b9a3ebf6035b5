#include "duelgrad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duelgrad/error.hpp"

namespace duelgrad {

int signed_bernoulli(double mu, Rng& rng) {
  if (std::isnan(mu) || std::abs(mu) > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "signed Bernoulli mean " << mu << " outside [-1, 1]";
    throw Error(ErrorCode::kInvalidMean, os.str());
  }
  const double p_plus = 0.5 * (std::clamp(mu, -1.0, 1.0) + 1.0);
  return rng.uniform() < p_plus ? 1 : -1;
}

int ComparisonOracle::duel(const Vector& x, const Vector& y) {
  const std::size_t d = objective_->dim();
  require_dim(x, d, "duel x");
  require_dim(y, d, "duel y");
  if (queries_ == std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kCounterOverflow, "oracle query counter overflow");
  }
  const double mean = (*transfer_)(objective_->value(x) - objective_->value(y));
  const int outcome = signed_bernoulli(mean, rng_);
  ++queries_;
  return outcome;
}

}  // namespace duelgrad
