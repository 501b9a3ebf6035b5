#include "duelgrad/diagnostics.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

#include "duelgrad/error.hpp"
#include "duelgrad/montecarlo.hpp"
#include "duelgrad/oracle.hpp"

namespace duelgrad {
namespace {

using json = nlohmann::ordered_json;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

EstimateReport make_report(std::string name, const MomentAccumulator& acc,
                           const MonteCarloOptions& options) {
  EstimateReport r;
  r.name = std::move(name);
  r.estimate = to_std(acc.mean());
  r.std_error = to_std(acc.std_error());
  r.n = acc.count();
  r.sigmas = options.sigmas;
  return r;
}

void require_samples(std::uint64_t n, std::uint64_t minimum) {
  if (n < minimum) {
    throw Error(ErrorCode::kInvalidArgument,
                "Monte-Carlo sample count must be >= " + std::to_string(minimum));
  }
}

json number_or_array(const std::vector<double>& v) {
  if (v.size() == 1) return v.front();
  return v;
}

}  // namespace

double EstimateReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  throw std::out_of_range("no detail named " + key);
}

std::string to_json(const EstimateReport& report, int indent) {
  json j;
  j["name"] = report.name;
  j["estimate"] = number_or_array(report.estimate);
  j["std_error"] = number_or_array(report.std_error);
  j["n"] = report.n;
  j["target"] = report.target ? number_or_array(*report.target) : json(nullptr);
  j["verdict"] = report.verdict ? "pass" : "fail";
  j["sigmas"] = report.sigmas;
  json details = json::object();
  for (const auto& [k, v] : report.details) details[k] = v;
  j["details"] = details;
  return j.dump(indent);
}

std::string to_json(const std::vector<EstimateReport>& reports, int indent) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(json::parse(to_json(r)));
  return arr.dump(indent);
}

EstimateReport estimate_ctilde(std::size_t d, std::uint64_t n, Rng& rng,
                               const MonteCarloOptions& options) {
  if (d == 0) throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 1");
  require_samples(n, 10000);
  const double root_d = std::sqrt(static_cast<double>(d));
  const auto acc = run_batches(
      n, rng(), Vector::Zero(1),
      [d, root_d](Rng& r, std::size_t count, MomentAccumulator& out) {
        Vector u(static_cast<Eigen::Index>(d));
        Vector sample(1);
        for (std::size_t i = 0; i < count; ++i) {
          sample_unit_sphere(r, u);
          sample[0] = root_d * std::abs(u[0]);
          out.add(sample);
        }
      },
      options.jobs);

  EstimateReport r = make_report("ctilde(d=" + std::to_string(d) + ")", acc, options);
  const double est = r.scalar();
  const double se = r.scalar_error();
  const double tol = 3.0 * se;
  const double lo = est - options.sigmas * se;
  const double hi = est + options.sigmas * se;
  r.verdict = lo >= 1.0 / 20.0 - tol && hi <= 1.0 + tol;
  r.details = {{"d", static_cast<double>(d)}, {"ci_low", lo}, {"ci_high", hi},
               {"interval_low", 1.0 / 20.0}, {"interval_high", 1.0}};
  return r;
}

EstimateReport check_fkm_identity(const Vector& a, std::uint64_t n, Rng& rng,
                                  const MonteCarloOptions& options) {
  if (a.size() == 0) throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 1");
  require_finite(a, "fkm vector");
  require_samples(n, 2);
  const auto d = a.size();
  const auto acc = run_batches(
      n, rng(), Vector::Zero(d),
      [&a, d](Rng& r, std::size_t count, MomentAccumulator& out) {
        Vector u(d);
        Vector sample(d);
        for (std::size_t i = 0; i < count; ++i) {
          sample_unit_sphere(r, u);
          sample.noalias() = a.dot(u) * u;
          out.add(sample);
        }
      },
      options.jobs);

  EstimateReport r = make_report("fkm(d=" + std::to_string(d) + ")", acc, options);
  const Vector target = a / static_cast<double>(d);
  r.target = to_std(target);
  double max_err = 0.0;
  r.verdict = true;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double err = std::abs(r.estimate[i] - target[i]);
    max_err = std::max(max_err, err);
    if (err > options.sigmas * r.std_error[i]) r.verdict = false;
  }
  r.details = {{"max_abs_error", max_err}};
  return r;
}

EstimateReport descent_alignment(const Vector& w, const Objective& objective,
                                 const TransferFunction& transfer, double gamma,
                                 std::uint64_t n, Rng& rng, const MonteCarloOptions& options) {
  require_dim(w, objective.dim(), "alignment point");
  require_samples(n, 2);
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  const Vector offset = w - objective.minimizer();
  const auto d = w.size();
  const auto acc = run_batches(
      n, rng(), Vector::Zero(1),
      [&](Rng& r, std::size_t count, MomentAccumulator& out) {
        ComparisonOracle oracle(objective, transfer, Rng(r()));
        Vector u(d);
        Vector sample(1);
        for (std::size_t i = 0; i < count; ++i) {
          sample_unit_sphere(r, u);
          const int o = oracle.duel(w + gamma * u, w - gamma * u);
          sample[0] = o * u.dot(offset);
          out.add(sample);
        }
      },
      options.jobs);

  EstimateReport r = make_report("descent-alignment(" + transfer.describe() + ")", acc, options);
  const double gap = objective.gap(w);
  const double est = r.scalar();
  const double se = r.scalar_error();
  r.details = {{"gap", gap}, {"gamma", gamma}};
  if (transfer.kind() == TransferKind::kLinear) {
    const double bound = (2.0 * gamma / static_cast<double>(d)) * transfer.c_rho() *
                         (gap - objective.beta() * gamma * gamma);
    r.target = std::vector<double>{bound};
    r.details.emplace_back("lower_bound", bound);
    r.verdict = est >= bound - options.sigmas * se;
  } else if (gap > 0.0) {
    r.verdict = est > options.sigmas * se;
  } else {
    r.verdict = std::abs(est) <= options.sigmas * se;
  }
  return r;
}

EstimateReport roundwise_progress_check(const Vector& w, const SolverConfig& cfg,
                                        const Objective& objective,
                                        const TransferFunction& transfer, std::uint64_t n,
                                        Rng& rng, const MonteCarloOptions& options) {
  require_dim(w, objective.dim(), "progress point");
  require_samples(n, 2);
  if (!(cfg.eta >= 0.0) || !(cfg.gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "progress check needs eta >= 0 and gamma > 0");
  }
  const BallDomain& domain = objective.domain();
  if (!domain.contains(w)) throw Error(ErrorCode::kInvalidArgument, "point outside the domain");
  const double start = objective.dist_sq(w);
  const auto d = w.size();
  const auto acc = run_batches(
      n, rng(), Vector::Constant(1, start),
      [&](Rng& r, std::size_t count, MomentAccumulator& out) {
        ComparisonOracle oracle(objective, transfer, Rng(r()));
        Vector u(d);
        Vector sample(1);
        for (std::size_t i = 0; i < count; ++i) {
          sample_unit_sphere(r, u);
          const StepResult step = rgd_step(w, u, cfg.eta, cfg.gamma, oracle, domain);
          sample[0] = objective.dist_sq(step.w_next);
          out.add(sample);
        }
      },
      options.jobs);

  EstimateReport r = make_report("roundwise-progress(" + transfer.describe() + ")", acc, options);
  const double mean = r.scalar();
  const double se = r.scalar_error();
  const double slack = options.sigmas * se;
  r.details = {{"start_dist_sq", start},
               {"observed_decrement", start - mean},
               {"eta", cfg.eta},
               {"gamma", cfg.gamma}};
  r.verdict = mean <= start + slack;
  if (transfer.kind() == TransferKind::kLinear) {
    const double gap = objective.gap(w);
    const double decrement = 4.0 * cfg.eta * cfg.gamma * transfer.c_rho() /
                                 static_cast<double>(d) *
                                 (gap - objective.beta() * cfg.gamma * cfg.gamma) -
                             cfg.eta * cfg.eta;
    r.target = std::vector<double>{start - decrement};
    r.details.emplace_back("predicted_decrement", decrement);
    r.verdict = r.verdict && mean <= start - decrement + slack;
  }
  return r;
}

namespace {

MomentAccumulator sample_direction(const Vector& w, const Objective& objective,
                                   const TransferFunction& transfer, double gamma,
                                   std::uint64_t n, Rng& rng, const Vector& axis,
                                   const MonteCarloOptions& options) {
  const auto d = w.size();
  const bool with_axis = axis.size() == d;
  return run_batches(
      n, rng(), Vector::Zero(with_axis ? d + 1 : d),
      [&](Rng& r, std::size_t count, MomentAccumulator& out) {
        ComparisonOracle oracle(objective, transfer, Rng(r()));
        Vector u(d);
        Vector sample(with_axis ? d + 1 : d);
        for (std::size_t i = 0; i < count; ++i) {
          sample_unit_sphere(r, u);
          const int o = oracle.duel(w + gamma * u, w - gamma * u);
          sample.head(d) = o * u;
          if (with_axis) sample[d] = o * u.dot(axis);
          out.add(sample);
        }
      },
      options.jobs);
}

}  // namespace

EstimateReport comparison_direction(const Vector& w, const Objective& objective,
                                    const TransferFunction& transfer, double gamma,
                                    std::uint64_t n, Rng& rng, const MonteCarloOptions& options) {
  require_dim(w, objective.dim(), "direction point");
  require_samples(n, 2);
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  const auto acc = sample_direction(w, objective, transfer, gamma, n, rng, Vector(), options);
  EstimateReport r = make_report("comparison-direction(" + transfer.describe() + ")", acc, options);
  // A raw estimate; there is no hypothesis to reject.
  r.verdict = true;
  return r;
}

EstimateReport scaled_gradient_estimate(const Vector& w, const Objective& objective,
                                        const TransferFunction& transfer, double gamma,
                                        std::uint64_t n, Rng& rng,
                                        const MonteCarloOptions& options) {
  require_dim(w, objective.dim(), "gradient point");
  require_samples(n, 2);
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  const Vector grad = objective.gradient(w);
  const double grad_norm = grad.norm();
  if (!(grad_norm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scaled gradient undefined at a zero gradient");
  }
  const Vector axis = grad / grad_norm;
  const auto d = w.size();
  const auto acc = sample_direction(w, objective, transfer, gamma, n, rng, axis, options);
  const Vector mean = acc.mean();
  const Vector se = acc.std_error();

  EstimateReport r;
  r.name = "scaled-gradient(" + transfer.describe() + ")";
  r.estimate = to_std(mean.head(d));
  r.std_error = to_std(se.head(d));
  r.n = acc.count();
  r.sigmas = options.sigmas;
  const double est_norm = mean.head(d).norm();
  const int p = transfer.proxy().p;
  const double cosine = est_norm > 0.0 ? mean.head(d).dot(axis) / est_norm : 0.0;
  r.details = {{"cosine", cosine},
               {"magnitude_ratio", est_norm / std::pow(grad_norm, p)},
               {"projection", mean[d]},
               {"projection_std_error", se[d]},
               {"p", static_cast<double>(p)}};
  r.verdict = mean[d] > options.sigmas * se[d];
  return r;
}

}  // namespace duelgrad
