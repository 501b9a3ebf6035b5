#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "duelgrad/geometry.hpp"
#include "duelgrad/objectives.hpp"
#include "duelgrad/oracle.hpp"
#include "duelgrad/random.hpp"
#include "duelgrad/tuning.hpp"

namespace duelgrad {

struct SolverConfig {
  double eta = 0.0;
  double gamma = 0.0;
  std::uint64_t budget = 0;
  Vector w1;

  /// Throws kInvalidArgument unless eta >= 0 and gamma > 0 are finite, the
  /// budget is positive, and w1 is finite.
  void validate() const;
};

struct StepResult {
  Vector w_next;
  int outcome = 0;
  Vector direction;
};

/// One round: duel (w + gamma u, w - gamma u), step w - eta o u, project.
StepResult rgd_step(const Vector& w, const SolverConfig& cfg, ComparisonOracle& oracle,
                    const Domain& domain, Rng& rng);

/// Same round with the direction supplied by the caller.
StepResult rgd_step(const Vector& w, const Vector& direction, double eta, double gamma,
                    ComparisonOracle& oracle, const Domain& domain);

struct TrajectoryRow {
  std::uint64_t t = 0;
  std::uint64_t queries = 0;
  double gap = 0.0;
  double dist_sq = 0.0;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

struct EpochSummary {
  int k = 0;
  std::uint64_t queries = 0;
  double dist_sq_start = 0.0;
  double dist_sq_end = 0.0;
};

struct RunRecord {
  std::vector<TrajectoryRow> rows;
  std::vector<EpochSummary> epochs;
  double min_gap = 0.0;
  std::uint64_t argmin_t = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t seed = 0;
  Vector final_iterate;
  double final_gap = 0.0;
  double final_dist_sq = 0.0;
};

struct RecordOptions {
  /// Row spacing; 0 picks ceil(T / 1000). t = 1, t = T + 1 and the argmin of
  /// the gap are always recorded.
  std::uint64_t stride = 0;
  /// Record every iterate regardless of stride.
  bool full = false;
};

/// Produces the direction for each round. Defaults to uniform on the sphere.
using DirectionSampler = std::function<void(Rng&, Eigen::Ref<Vector>)>;

/// Runs T rounds from cfg.w1. The gap and distance columns come from the known
/// objective; they cost no oracle queries. min_gap covers every iterate
/// w_1 ... w_{T+1}, not only the recorded rows.
RunRecord rgd_run(const SolverConfig& cfg, ComparisonOracle& oracle, const Objective& objective,
                  const Domain& domain, Rng& rng, const RecordOptions& options = {},
                  const DirectionSampler& sampler = {});

/// Chains warm-started rgd_run calls over the schedule's epochs. Row t values
/// are global iterate indices; one EpochSummary is appended per epoch.
RunRecord epoch_rgd_run(const EpochSchedule& schedule, const Vector& w1,
                        ComparisonOracle& oracle, const Objective& objective,
                        const Domain& domain, Rng& rng, const RecordOptions& options = {});

}  // namespace duelgrad
