#include "duelgrad/tuning.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "duelgrad/error.hpp"

namespace duelgrad {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive and finite");
  }
}

void require_dimension(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 1");
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) {
    throw Error(ErrorCode::kCounterOverflow, "query budget exceeds 64 bits");
  }
  return a + b;
}

}  // namespace

std::uint64_t ceil_count(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::kInvalidArgument, "budget is NaN");
  if (x <= 0.0) return 0;
  const double c = std::ceil(x - 1e-12 * x);
  if (!(c < 0x1.0p64)) {
    std::ostringstream os;
    os << "budget " << x << " exceeds 64 bits";
    throw Error(ErrorCode::kCounterOverflow, os.str());
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t EpochSchedule::total_queries() const {
  std::uint64_t total = 0;
  for (const auto& e : epochs) total = checked_add(total, e.budget);
  return total;
}

TunedParams tune_smooth(double eps, double beta, int d, double D, int p, double c_rho,
                        double ctilde) {
  if (p == 0) {
    throw Error(ErrorCode::kUseSignTuning, "p = 0 is the sign transfer; use tune_sign");
  }
  if (p < 0) throw Error(ErrorCode::kInvalidArgument, "proxy degree must be >= 1");
  require_positive(eps, "eps");
  require_positive(beta, "beta");
  require_positive(D, "D");
  require_positive(c_rho, "c_rho");
  require_positive(ctilde, "ctilde");
  require_dimension(d);

  const double dd = d;
  const double pp = p;
  const double c_pow = std::pow(ctilde, 2.0 * pp - 1.0);

  TunedParams out;
  out.gamma = ctilde * eps / (beta * std::sqrt(dd) * D);
  out.eta = pp * c_rho * c_pow * std::pow(eps, 2.0 * pp) /
            (std::pow(dd, (2.0 * pp + 1.0) / 2.0) * std::pow(beta, pp) * std::pow(D, 2.0 * pp - 1.0));
  const double denom = pp * pp * (c_pow * c_rho) * (c_pow * c_rho) * std::pow(eps, 4.0 * pp);
  const double rounds = std::pow(dd, 2.0 * pp + 1.0) * std::pow(beta, 2.0 * pp) *
                        std::pow(D, 4.0 * pp) / denom;
  out.budget = checked_add(ceil_count(rounds), 1);
  return out;
}

TunedParams tune_linear(double eps, double beta, int d, double D, double c_rho) {
  require_positive(eps, "eps");
  require_positive(beta, "beta");
  require_positive(D, "D");
  require_positive(c_rho, "c_rho");
  require_dimension(d);
  const double dd = d;
  TunedParams out;
  out.gamma = std::sqrt(eps / (2.0 * beta));
  out.eta = c_rho * std::pow(eps, 1.5) / (dd * std::sqrt(2.0 * beta));
  out.budget = ceil_count(2.0 * dd * dd * beta * D * D / (c_rho * c_rho * eps * eps * eps));
  return out;
}

TunedParams tune_sign(double eps, double beta, int d, double D, double sign_constant,
                      double ctilde) {
  require_positive(eps, "eps");
  require_positive(beta, "beta");
  require_positive(D, "D");
  require_positive(sign_constant, "sign constant");
  require_positive(ctilde, "ctilde");
  require_dimension(d);
  const double dd = d;
  TunedParams out;
  out.gamma = eps / (10.0 * beta * std::sqrt(dd) * D);
  out.eta = ctilde * eps / (std::sqrt(dd) * beta * D);
  out.budget = ceil_count(sign_constant * dd * D * beta / eps);
  return out;
}

EpochSchedule tune_epoch(double eps, double alpha, double beta, int d, double D, int p,
                         double c_rho, double ctilde) {
  require_positive(eps, "eps");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(D, "D");
  require_positive(c_rho, "c_rho");
  require_positive(ctilde, "ctilde");
  require_dimension(d);
  if (p == 0) throw Error(ErrorCode::kUseSignTuning, "epoch tuning needs p >= 1");
  if (p < 0) throw Error(ErrorCode::kInvalidArgument, "proxy degree must be >= 1");
  if (alpha > beta) throw Error(ErrorCode::kInvalidArgument, "alpha must not exceed beta");

  const double dd = d;
  const double pp = p;
  EpochSchedule s;
  s.ctilde = ctilde;
  s.p = p;
  s.eps = eps;
  s.beta = beta;
  s.initial_radius = D;
  s.B = (2.0 * c_rho * pp / (alpha + beta)) *
        (std::pow(alpha * alpha / (4.0 * beta), pp) * std::pow(ctilde, 2.0 * pp - 1.0) /
         std::pow(dd, (2.0 * pp + 1.0) / 2.0));

  const double ratio = beta * D * D / (2.0 * eps);
  if (ratio <= 1.0) {
    s.trivial = true;
    return s;
  }
  s.k_eps = static_cast<int>(ceil_count(std::log(ratio) / std::log(4.0 / 3.0)));

  const double shrink = std::sqrt(3.0 / 4.0);
  double radius = D;
  for (int k = 1; k <= s.k_eps; ++k) {
    EpochParams e;
    e.k = k;
    e.radius = radius;
    e.eta = s.B * std::pow(radius, 2.0 * pp + 1.0);
    e.gamma = ctilde * alpha * radius / (2.0 * beta * std::sqrt(dd));
    e.budget = ceil_count(1.0 / (2.0 * s.B * s.B * std::pow(radius * radius, 2.0 * pp)));
    s.epochs.push_back(e);
    radius *= shrink;
  }
  return s;
}

double epoch_budget_geometric_sum(const EpochSchedule& s) {
  if (s.trivial || s.epochs.empty()) return 0.0;
  const double pp = s.p;
  const double q = std::pow(4.0 / 3.0, 2.0 * pp);
  const double lead = 1.0 / (2.0 * s.B * s.B * std::pow(s.initial_radius, 4.0 * pp));
  return lead * (std::pow(q, s.k_eps) - 1.0) / (q - 1.0);
}

double epoch_budget_claimed_bound(const EpochSchedule& s) {
  if (s.trivial) return 0.0;
  const double pp = s.p;
  const double ratio = s.beta * s.initial_radius * s.initial_radius / (2.0 * s.eps);
  const double lead = 1.0 / (4.0 * s.B * s.B * std::pow(s.initial_radius, 4.0 * pp));
  return lead * (std::pow(ratio, 2.0 * pp) - 1.0);
}

}  // namespace duelgrad
