#include "duelgrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duelgrad/error.hpp"

namespace duelgrad {

void SolverConfig::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "eta must be finite and non-negative");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be finite and positive");
  }
  if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "query budget must be >= 1");
  if (w1.size() == 0) throw Error(ErrorCode::kInvalidDimension, "initial point is empty");
  require_finite(w1, "initial point");
}

StepResult rgd_step(const Vector& w, const Vector& direction, double eta, double gamma,
                    ComparisonOracle& oracle, const Domain& domain) {
  const int o = oracle.duel(w + gamma * direction, w - gamma * direction);
  StepResult out;
  out.outcome = o;
  out.direction = direction;
  out.w_next = domain.project(w - (eta * o) * direction);
  return out;
}

StepResult rgd_step(const Vector& w, const SolverConfig& cfg, ComparisonOracle& oracle,
                    const Domain& domain, Rng& rng) {
  const Vector u = sample_unit_sphere(static_cast<std::size_t>(w.size()), rng);
  return rgd_step(w, u, cfg.eta, cfg.gamma, oracle, domain);
}

namespace {

struct Tracker {
  double fstar = 0.0;
  bool have_min = false;
  TrajectoryRow best;
};

std::uint64_t resolve_stride(const RecordOptions& options, std::uint64_t budget) {
  if (options.full) return 1;
  if (options.stride > 0) return options.stride;
  return std::max<std::uint64_t>(1, (budget + 999) / 1000);
}

/// Runs `budget` rounds from `w`, appending rows for global iterate indices
/// t_offset + 1 ... t_offset + budget + 1 (the first only when record_start).
Vector run_segment(Vector w, double eta, double gamma, std::uint64_t budget,
                   std::uint64_t t_offset, bool record_start, ComparisonOracle& oracle,
                   const Objective& objective, const Domain& domain, Rng& rng,
                   const RecordOptions& options, const DirectionSampler& sampler,
                   RunRecord& rec, Tracker& tracker) {
  const std::uint64_t stride = resolve_stride(options, budget);
  const Eigen::Index d = w.size();
  Vector u(d), x(d), y(d), step(d);

  auto observe = [&](std::uint64_t local_t, bool force) {
    TrajectoryRow row;
    row.t = t_offset + local_t;
    row.queries = oracle.query_count();
    row.gap = objective.value(w) - tracker.fstar;
    row.dist_sq = (w - objective.minimizer()).squaredNorm();
    if (!tracker.have_min || row.gap < tracker.best.gap) {
      tracker.best = row;
      tracker.have_min = true;
    }
    if (force || (local_t - 1) % stride == 0) rec.rows.push_back(row);
  };

  if (record_start) observe(1, true);
  for (std::uint64_t t = 1; t <= budget; ++t) {
    if (sampler) {
      sampler(rng, u);
    } else {
      sample_unit_sphere(rng, u);
    }
    x.noalias() = w + gamma * u;
    y.noalias() = w - gamma * u;
    const int o = oracle.duel(x, y);
    step.noalias() = w - (eta * o) * u;
    w = domain.project(step);
    observe(t + 1, t == budget);
  }
  return w;
}

void finalize(RunRecord& rec, const Tracker& tracker, const Vector& w, const Objective& objective,
              std::uint64_t queries_before, const ComparisonOracle& oracle) {
  rec.min_gap = tracker.best.gap;
  rec.argmin_t = tracker.best.t;
  const auto pos = std::lower_bound(rec.rows.begin(), rec.rows.end(), tracker.best.t,
                                    [](const TrajectoryRow& r, std::uint64_t t) { return r.t < t; });
  if (pos == rec.rows.end() || pos->t != tracker.best.t) rec.rows.insert(pos, tracker.best);
  rec.total_queries = oracle.query_count() - queries_before;
  rec.final_iterate = w;
  rec.final_gap = objective.value(w) - tracker.fstar;
  rec.final_dist_sq = (w - objective.minimizer()).squaredNorm();
}

void require_feasible_start(const Vector& w1, const Objective& objective, const Domain& domain) {
  require_dim(w1, objective.dim(), "initial point");
  require_dim(w1, domain.dim(), "initial point");
  if (!domain.contains(w1)) {
    throw Error(ErrorCode::kInvalidArgument, "initial point lies outside the domain");
  }
}

}  // namespace

RunRecord rgd_run(const SolverConfig& cfg, ComparisonOracle& oracle, const Objective& objective,
                  const Domain& domain, Rng& rng, const RecordOptions& options,
                  const DirectionSampler& sampler) {
  cfg.validate();
  require_feasible_start(cfg.w1, objective, domain);

  RunRecord rec;
  Tracker tracker;
  tracker.fstar = objective.min_value();
  const std::uint64_t before = oracle.query_count();
  const Vector w = run_segment(cfg.w1, cfg.eta, cfg.gamma, cfg.budget, 0, true, oracle, objective,
                               domain, rng, options, sampler, rec, tracker);
  finalize(rec, tracker, w, objective, before, oracle);
  return rec;
}

RunRecord epoch_rgd_run(const EpochSchedule& schedule, const Vector& w1,
                        ComparisonOracle& oracle, const Objective& objective,
                        const Domain& domain, Rng& rng, const RecordOptions& options) {
  if (schedule.trivial || schedule.epochs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "epoch schedule is empty");
  }
  require_feasible_start(w1, objective, domain);
  const double start_dist = (w1 - objective.minimizer()).norm();
  if (start_dist > schedule.initial_radius * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kInvalidArgument, "initial point is farther than D from the minimiser");
  }

  RunRecord rec;
  Tracker tracker;
  tracker.fstar = objective.min_value();
  const std::uint64_t before = oracle.query_count();
  Vector w = w1;
  std::uint64_t t_offset = 0;
  for (const EpochParams& e : schedule.epochs) {
    if (e.budget == 0) throw Error(ErrorCode::kInvalidArgument, "epoch budget must be >= 1");
    EpochSummary summary;
    summary.k = e.k;
    summary.dist_sq_start = (w - objective.minimizer()).squaredNorm();
    const std::uint64_t q0 = oracle.query_count();
    w = run_segment(std::move(w), e.eta, e.gamma, e.budget, t_offset, t_offset == 0, oracle,
                    objective, domain, rng, options, {}, rec, tracker);
    summary.queries = oracle.query_count() - q0;
    summary.dist_sq_end = (w - objective.minimizer()).squaredNorm();
    rec.epochs.push_back(summary);
    t_offset += e.budget;
  }
  finalize(rec, tracker, w, objective, before, oracle);
  return rec;
}

}  // namespace duelgrad
