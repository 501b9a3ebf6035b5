#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duelgrad/geometry.hpp"
#include "duelgrad/objectives.hpp"
#include "duelgrad/random.hpp"
#include "duelgrad/solver.hpp"
#include "duelgrad/transfer.hpp"

namespace duelgrad {

struct MonteCarloOptions {
  /// Width of the acceptance band in standard errors.
  double sigmas = 4.0;
  unsigned jobs = 0;
};

struct EstimateReport {
  std::string name;
  std::vector<double> estimate;
  std::vector<double> std_error;
  std::uint64_t n = 0;
  std::optional<std::vector<double>> target;
  double sigmas = 4.0;
  bool verdict = false;
  /// Named auxiliary quantities (bounds, cosines, z-scores).
  std::vector<std::pair<std::string, double>> details;

  double scalar() const { return estimate.at(0); }
  double scalar_error() const { return std_error.at(0); }
  /// Throws std::out_of_range for unknown names.
  double detail(const std::string& key) const;
};

std::string to_json(const EstimateReport& report, int indent = -1);
std::string to_json(const std::vector<EstimateReport>& reports, int indent = 2);

/// c~ = sqrt(d) E|u_1| for u uniform on the sphere. Passes when the 4-sigma
/// interval lies inside [1/20 - tol, 1 + tol] with tol = 3 std errors.
/// Requires n >= 10^4.
EstimateReport estimate_ctilde(std::size_t d, std::uint64_t n, Rng& rng,
                               const MonteCarloOptions& options = {});

/// E[(a.u) u] against a / d.
EstimateReport check_fkm_identity(const Vector& a, std::uint64_t n, Rng& rng,
                                  const MonteCarloOptions& options = {});

/// E[o u . (w - w*)] at a fixed w, where o is the duel outcome on
/// (w + gamma u, w - gamma u). For linear transfers the report also carries
/// the closed-form lower bound (2 gamma / d) c_rho (gap - beta gamma^2) and the
/// verdict is estimate >= bound - k sigma; otherwise the verdict requires a
/// significantly positive estimate (or |estimate| <= k sigma at the minimiser).
EstimateReport descent_alignment(const Vector& w, const Objective& objective,
                                 const TransferFunction& transfer, double gamma,
                                 std::uint64_t n, Rng& rng,
                                 const MonteCarloOptions& options = {});

/// Mean of |w' - w*|^2 over n independent single rounds from w. Passes when
/// the mean is at most |w - w*|^2 + k sigma; for linear transfers it must also
/// clear the closed-form decrement (4 eta gamma c_rho / d)(gap - beta gamma^2) - eta^2.
EstimateReport roundwise_progress_check(const Vector& w, const SolverConfig& cfg,
                                        const Objective& objective,
                                        const TransferFunction& transfer, std::uint64_t n,
                                        Rng& rng, const MonteCarloOptions& options = {});

/// Raw estimate of E[o u] at w, with no reference to the gradient.
EstimateReport comparison_direction(const Vector& w, const Objective& objective,
                                    const TransferFunction& transfer, double gamma,
                                    std::uint64_t n, Rng& rng,
                                    const MonteCarloOptions& options = {});

/// E[o u] compared with grad f(w): reports the cosine and the ratio
/// |E[o u]| / |grad f(w)|^p. Passes when the component along the gradient is
/// positive at k sigma. Throws kInvalidArgument at a zero gradient.
EstimateReport scaled_gradient_estimate(const Vector& w, const Objective& objective,
                                        const TransferFunction& transfer, double gamma,
                                        std::uint64_t n, Rng& rng,
                                        const MonteCarloOptions& options = {});

}  // namespace duelgrad
