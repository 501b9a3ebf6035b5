#pragma once

#include <cstdint>
#include <vector>

namespace duelgrad {

/// Lower end of the interval [1/20, 1] containing the sphere constant c~.
inline constexpr double kDefaultCtilde = 1.0 / 20.0;

/// Multiplier in T = C * d D beta / eps for sign feedback.
inline constexpr double kDefaultSignConstant = 400.0;

struct TunedParams {
  double gamma = 0.0;
  double eta = 0.0;
  std::uint64_t budget = 0;
};

struct EpochParams {
  int k = 0;
  double radius = 0.0;  // D_k
  double eta = 0.0;
  double gamma = 0.0;
  std::uint64_t budget = 0;  // t_k
};

struct EpochSchedule {
  int k_eps = 0;
  double B = 0.0;
  double ctilde = kDefaultCtilde;
  int p = 1;
  double eps = 0.0;
  double beta = 0.0;
  double initial_radius = 0.0;
  /// Set when eps >= beta D^2 / 2: every feasible point is already eps-optimal.
  bool trivial = false;
  std::vector<EpochParams> epochs;

  std::uint64_t total_queries() const;
};

/// ceil(x) after discounting a 1e-12 relative error, so exact-arithmetic
/// integers are not bumped up by rounding noise. Throws kCounterOverflow when
/// the result does not fit in 64 bits.
std::uint64_t ceil_count(double x);

/// General p >= 1: gamma = c eps / (beta sqrt(d) D),
/// eta = p c_rho c^(2p-1) eps^(2p) / (d^((2p+1)/2) beta^p D^(2p-1)),
/// T = ceil(d^(2p+1) beta^(2p) D^(4p) / (p^2 (c^(2p-1) c_rho)^2 eps^(4p))) + 1.
TunedParams tune_smooth(double eps, double beta, int d, double D, int p, double c_rho,
                        double ctilde = kDefaultCtilde);

/// Linear transfer: gamma = sqrt(eps / 2 beta), eta = c_rho eps^1.5 / (d sqrt(2 beta)),
/// T = ceil(2 d^2 beta D^2 / (c_rho^2 eps^3)).
TunedParams tune_linear(double eps, double beta, int d, double D, double c_rho);

/// Sign transfer: gamma = eps / (10 beta sqrt(d) D), eta = c eps / (sqrt(d) beta D),
/// T = ceil(C d D beta / eps).
TunedParams tune_sign(double eps, double beta, int d, double D,
                      double sign_constant = kDefaultSignConstant,
                      double ctilde = kDefaultCtilde);

/// Epoch schedule for alpha-strongly convex, beta-smooth objectives.
EpochSchedule tune_epoch(double eps, double alpha, double beta, int d, double D, int p,
                         double c_rho, double ctilde = kDefaultCtilde);

/// Exact geometric sum of the unrounded epoch budgets,
/// (1 / (2 B^2 D^(4p))) ((4/3)^(2p k) - 1) / ((4/3)^(2p) - 1).
double epoch_budget_geometric_sum(const EpochSchedule& schedule);

/// Closed-form upper bound claimed for the epoch budget,
/// (1 / (4 B^2 D^(4p))) ((beta D^2 / 2 eps)^(2p) - 1).
double epoch_budget_claimed_bound(const EpochSchedule& schedule);

}  // namespace duelgrad
