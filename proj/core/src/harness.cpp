#include "duelgrad/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "duelgrad/error.hpp"
#include "duelgrad/montecarlo.hpp"
#include "duelgrad/oracle.hpp"

namespace duelgrad::harness {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::kConfig, field + ": " + message);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(where, "expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) config_error(where + "." + item.key(), "unknown key");
  }
}

template <typename T>
T read(const json& obj, const char* key, const std::string& where, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    config_error(where + "." + key, "wrong type");
  }
}

double read_number(const json& obj, const char* key, const std::string& where, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) config_error(where + "." + key, "expected a number");
  return it->get<double>();
}

std::uint64_t read_count(const json& obj, const char* key, const std::string& where,
                         std::uint64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) config_error(where + "." + key, "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

std::vector<double> read_vector(const json& value, const std::string& where) {
  if (!value.is_array()) config_error(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : value) {
    if (!x.is_number()) config_error(where, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

ObjectiveSpec parse_objective(const json& j) {
  const std::string where = "objective";
  reject_unknown(j, where, {"kind", "eigenvalues", "minimizer", "domain_center", "domain_radius"});
  ObjectiveSpec spec;
  spec.kind = read<std::string>(j, "kind", where, spec.kind);
  if (j.contains("eigenvalues")) spec.eigenvalues = read_vector(j["eigenvalues"], where + ".eigenvalues");
  if (j.contains("minimizer")) spec.minimizer = read_vector(j["minimizer"], where + ".minimizer");
  if (j.contains("domain_center")) {
    spec.domain_center = read_vector(j["domain_center"], where + ".domain_center");
  }
  spec.domain_radius = read_number(j, "domain_radius", where, spec.domain_radius);
  return spec;
}

SeriesSpec parse_series(const json& j) {
  const std::string where = "transfer.series";
  reject_unknown(j, where, {"coefficients", "radius", "tail_bound"});
  SeriesSpec spec;
  if (j.contains("coefficients")) {
    const json& c = j["coefficients"];
    if (!c.is_object()) config_error(where + ".coefficients", "expected {\"degree\": value}");
    for (const auto& item : c.items()) {
      int degree = 0;
      const std::string& key = item.key();
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), degree);
      if (ec != std::errc() || ptr != key.data() + key.size()) {
        config_error(where + ".coefficients." + key, "degree must be an integer");
      }
      if (!item.value().is_number()) config_error(where + ".coefficients." + key, "expected a number");
      spec.coefficients[degree] = item.value().get<double>();
    }
  }
  spec.radius = read_number(j, "radius", where, spec.radius);
  spec.tail_bound = read_number(j, "tail_bound", where, spec.tail_bound);
  return spec;
}

TransferSpec parse_transfer(const json& j) {
  const std::string where = "transfer";
  reject_unknown(j, where, {"kind", "c_rho", "omega", "p", "series"});
  TransferSpec spec;
  if (j.contains("kind")) {
    const auto name = read<std::string>(j, "kind", where, "");
    const auto kind = parse_transfer_kind(name);
    if (!kind) config_error("transfer.kind", "unknown transfer '" + name + "'");
    spec.kind = *kind;
  }
  spec.c_rho = read_number(j, "c_rho", where, spec.c_rho);
  spec.omega = read_number(j, "omega", where, spec.omega);
  spec.p = read<int>(j, "p", where, spec.p);
  if (j.contains("series")) spec.series = parse_series(j["series"]);
  return spec;
}

TuningSpec parse_tuning(const json& j) {
  const std::string where = "tuning";
  reject_unknown(j, where, {"mode", "eta", "gamma", "budget", "ctilde", "sign_constant"});
  TuningSpec spec;
  if (j.contains("mode")) {
    const auto name = read<std::string>(j, "mode", where, "");
    const auto mode = parse_tuning_mode(name);
    if (!mode) config_error("tuning.mode", "unknown mode '" + name + "'");
    spec.mode = *mode;
  }
  if (j.contains("eta")) spec.eta = read_number(j, "eta", where, 0.0);
  if (j.contains("gamma")) spec.gamma = read_number(j, "gamma", where, 0.0);
  if (j.contains("budget")) spec.budget = read_count(j, "budget", where, 0);
  spec.ctilde = read_number(j, "ctilde", where, spec.ctilde);
  spec.sign_constant = read_number(j, "sign_constant", where, spec.sign_constant);
  return spec;
}

}  // namespace

std::optional<TransferKind> parse_transfer_kind(const std::string& name) {
  for (auto kind : {TransferKind::kSign, TransferKind::kLinear, TransferKind::kSigmoid,
                    TransferKind::kPolyProxy, TransferKind::kSeriesDefined}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "rgd") return Algorithm::kRgd;
  if (name == "epoch") return Algorithm::kEpoch;
  return std::nullopt;
}

std::optional<TuningMode> parse_tuning_mode(const std::string& name) {
  if (name == "theorem") return TuningMode::kTheorem;
  if (name == "linear") return TuningMode::kLinear;
  if (name == "sign") return TuningMode::kSign;
  if (name == "manual") return TuningMode::kManual;
  return std::nullopt;
}

const char* to_string(Algorithm a) { return a == Algorithm::kRgd ? "rgd" : "epoch"; }

const char* to_string(TuningMode m) {
  switch (m) {
    case TuningMode::kTheorem: return "theorem";
    case TuningMode::kLinear: return "linear";
    case TuningMode::kSign: return "sign";
    case TuningMode::kManual: return "manual";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (objective.kind != "quadratic") config_error("objective.kind", "only 'quadratic' is supported");
  const std::size_t d = objective.eigenvalues.size();
  if (d == 0) config_error("objective.eigenvalues", "must not be empty");
  if (!all_finite(objective.eigenvalues)) config_error("objective.eigenvalues", "must be finite");
  if (*std::min_element(objective.eigenvalues.begin(), objective.eigenvalues.end()) < 0.0) {
    config_error("objective.eigenvalues", "must be non-negative");
  }
  if (*std::max_element(objective.eigenvalues.begin(), objective.eigenvalues.end()) <= 0.0) {
    config_error("objective.eigenvalues", "need at least one positive eigenvalue");
  }
  if (objective.minimizer.size() != d || !all_finite(objective.minimizer)) {
    config_error("objective.minimizer", "needs " + std::to_string(d) + " finite entries");
  }
  if (!objective.domain_center.empty() &&
      (objective.domain_center.size() != d || !all_finite(objective.domain_center))) {
    config_error("objective.domain_center", "needs " + std::to_string(d) + " finite entries");
  }
  if (!(objective.domain_radius > 0.0) || !std::isfinite(objective.domain_radius)) {
    config_error("objective.domain_radius", "must be positive");
  }
  {
    Vector center = objective.domain_center.empty() ? Vector::Zero(static_cast<Eigen::Index>(d))
                                                    : to_vector(objective.domain_center);
    if (!BallDomain(center, objective.domain_radius).contains(to_vector(objective.minimizer))) {
      config_error("objective.minimizer", "lies outside the domain");
    }
    if (w1) {
      if (w1->size() != d || !all_finite(*w1)) {
        config_error("w1", "needs " + std::to_string(d) + " finite entries");
      }
      if (!BallDomain(center, objective.domain_radius).contains(to_vector(*w1))) {
        config_error("w1", "lies outside the domain");
      }
    }
  }

  switch (transfer.kind) {
    case TransferKind::kSign: break;
    case TransferKind::kLinear:
      if (!(transfer.c_rho > 0.0)) config_error("transfer.c_rho", "must be positive");
      break;
    case TransferKind::kSigmoid:
      if (!(transfer.omega > 0.0) || !std::isfinite(transfer.omega)) {
        config_error("transfer.omega", "must be positive");
      }
      break;
    case TransferKind::kPolyProxy:
      if (transfer.p < 1) config_error("transfer.p", "must be >= 1");
      if (!(transfer.c_rho > 0.0)) config_error("transfer.c_rho", "must be positive");
      break;
    case TransferKind::kSeriesDefined:
      if (transfer.series.coefficients.empty()) config_error("transfer.series", "needs coefficients");
      break;
  }

  if (!(eps > 0.0) || !std::isfinite(eps)) config_error("eps", "must be positive");
  if (trials < 1) config_error("trials", "must be >= 1");
  if (tuning.mode == TuningMode::kManual) {
    if (!tuning.eta || !tuning.gamma || !tuning.budget) {
      config_error("tuning", "manual tuning requires eta, gamma and budget");
    }
    if (!(*tuning.eta >= 0.0) || !std::isfinite(*tuning.eta)) config_error("tuning.eta", "must be >= 0");
    if (!(*tuning.gamma > 0.0) || !std::isfinite(*tuning.gamma)) {
      config_error("tuning.gamma", "must be positive");
    }
    if (*tuning.budget < 1) config_error("tuning.budget", "must be >= 1");
  }
  if (!(tuning.ctilde > 0.0) || tuning.ctilde > 1.0) config_error("tuning.ctilde", "must be in (0, 1]");
  if (!(tuning.sign_constant > 0.0)) config_error("tuning.sign_constant", "must be positive");
  if (algorithm == Algorithm::kEpoch && tuning.mode != TuningMode::kTheorem) {
    config_error("tuning.mode", "epoch runs use theorem tuning only");
  }
  if (output.empty()) config_error("output", "must not be empty");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("config: invalid JSON: ") + e.what());
  }
  const std::string where = "config";
  reject_unknown(j, where,
                 {"objective", "transfer", "algorithm", "tuning", "eps", "trials", "base_seed",
                  "record_stride", "full_record", "w1", "output", "jobs", "record_timing"});
  ExperimentConfig cfg;
  if (j.contains("objective")) cfg.objective = parse_objective(j["objective"]);
  if (j.contains("transfer")) cfg.transfer = parse_transfer(j["transfer"]);
  if (j.contains("algorithm")) {
    const auto name = read<std::string>(j, "algorithm", where, "");
    const auto a = parse_algorithm(name);
    if (!a) config_error("algorithm", "unknown algorithm '" + name + "'");
    cfg.algorithm = *a;
  }
  if (j.contains("tuning")) cfg.tuning = parse_tuning(j["tuning"]);
  cfg.eps = read_number(j, "eps", where, cfg.eps);
  cfg.trials = read_count(j, "trials", where, cfg.trials);
  cfg.base_seed = read_count(j, "base_seed", where, cfg.base_seed);
  cfg.record_stride = read_count(j, "record_stride", where, cfg.record_stride);
  cfg.full_record = read<bool>(j, "full_record", where, cfg.full_record);
  if (j.contains("w1")) cfg.w1 = read_vector(j["w1"], "w1");
  cfg.output = read<std::string>(j, "output", where, cfg.output);
  cfg.jobs = static_cast<unsigned>(read_count(j, "jobs", where, cfg.jobs));
  cfg.record_timing = read<bool>(j, "record_timing", where, cfg.record_timing);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace {

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["objective"] = {{"kind", cfg.objective.kind},
                    {"eigenvalues", cfg.objective.eigenvalues},
                    {"minimizer", cfg.objective.minimizer},
                    {"domain_center", cfg.objective.domain_center},
                    {"domain_radius", cfg.objective.domain_radius}};
  json t;
  t["kind"] = to_string(cfg.transfer.kind);
  t["c_rho"] = cfg.transfer.c_rho;
  t["omega"] = cfg.transfer.omega;
  t["p"] = cfg.transfer.p;
  if (cfg.transfer.kind == TransferKind::kSeriesDefined) {
    json coeffs = json::object();
    for (const auto& [n, a] : cfg.transfer.series.coefficients) coeffs[std::to_string(n)] = a;
    t["series"] = {{"coefficients", coeffs},
                   {"radius", cfg.transfer.series.radius},
                   {"tail_bound", cfg.transfer.series.tail_bound}};
  }
  j["transfer"] = t;
  j["algorithm"] = to_string(cfg.algorithm);
  json tuning;
  tuning["mode"] = to_string(cfg.tuning.mode);
  if (cfg.tuning.eta) tuning["eta"] = *cfg.tuning.eta;
  if (cfg.tuning.gamma) tuning["gamma"] = *cfg.tuning.gamma;
  if (cfg.tuning.budget) tuning["budget"] = *cfg.tuning.budget;
  tuning["ctilde"] = cfg.tuning.ctilde;
  tuning["sign_constant"] = cfg.tuning.sign_constant;
  j["tuning"] = tuning;
  j["eps"] = cfg.eps;
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["record_stride"] = cfg.record_stride;
  j["full_record"] = cfg.full_record;
  if (cfg.w1) j["w1"] = *cfg.w1;
  j["output"] = cfg.output;
  j["jobs"] = cfg.jobs;
  j["record_timing"] = cfg.record_timing;
  return j;
}

}  // namespace

std::string to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

QuadraticObjective build_objective(const ObjectiveSpec& spec, double gamma_max) {
  if (spec.kind != "quadratic") config_error("objective.kind", "only 'quadratic' is supported");
  const auto d = static_cast<Eigen::Index>(spec.eigenvalues.size());
  Vector center = spec.domain_center.empty() ? Vector::Zero(d) : to_vector(spec.domain_center);
  BallDomain domain(std::move(center), spec.domain_radius);
  return make_diagonal_quadratic(spec.eigenvalues, to_vector(spec.minimizer), domain, gamma_max);
}

TransferFunction build_transfer(const TransferSpec& spec) {
  switch (spec.kind) {
    case TransferKind::kSign: return TransferFunction::sign();
    case TransferKind::kLinear: return TransferFunction::linear(spec.c_rho);
    case TransferKind::kSigmoid: return TransferFunction::sigmoid(spec.omega);
    case TransferKind::kPolyProxy: return TransferFunction::poly_proxy(spec.p, spec.c_rho);
    case TransferKind::kSeriesDefined: return TransferFunction::series(spec.series);
  }
  config_error("transfer.kind", "unknown transfer");
}

Plan make_plan(const ExperimentConfig& cfg, const Objective& objective,
               const TransferFunction& transfer) {
  Plan plan;
  plan.algorithm = cfg.algorithm;
  const BallDomain& domain = objective.domain();
  const int d = static_cast<int>(objective.dim());
  const double D = domain.diameter();
  const double beta = objective.beta();
  const ProxyParams proxy = transfer.proxy();
  const TuningSpec& t = cfg.tuning;

  if (cfg.w1) {
    plan.w1 = to_vector(*cfg.w1);
  } else {
    plan.w1 = domain.center();
    plan.w1[0] += domain.radius();
  }

  if (cfg.algorithm == Algorithm::kEpoch) {
    if (proxy.p == 0) config_error("transfer", "epoch runs need a transfer with p >= 1");
    plan.schedule = tune_epoch(cfg.eps, objective.alpha(), beta, d, D, proxy.p, proxy.c_rho, t.ctilde);
    if (plan.schedule.trivial) {
      config_error("eps", "eps >= beta D^2 / 2: every feasible point is already eps-optimal");
    }
    return plan;
  }

  switch (t.mode) {
    case TuningMode::kTheorem:
      plan.params = proxy.p == 0
                        ? tune_sign(cfg.eps, beta, d, D, t.sign_constant, t.ctilde)
                        : tune_smooth(cfg.eps, beta, d, D, proxy.p, proxy.c_rho, t.ctilde);
      break;
    case TuningMode::kLinear:
      if (proxy.p != 1) config_error("tuning.mode", "linear tuning needs a transfer with p = 1");
      plan.params = tune_linear(cfg.eps, beta, d, D, proxy.c_rho);
      break;
    case TuningMode::kSign:
      plan.params = tune_sign(cfg.eps, beta, d, D, t.sign_constant, t.ctilde);
      break;
    case TuningMode::kManual:
      plan.params = TunedParams{*t.gamma, *t.eta, *t.budget};
      break;
  }
  return plan;
}

RunRecord run_trial(const ExperimentConfig& cfg, const Plan& plan, const Objective& objective,
                    const TransferFunction& transfer, std::uint64_t trial) {
  const std::uint64_t seed = cfg.base_seed + trial;
  Rng rng = Rng::stream(seed, 0);
  ComparisonOracle oracle(objective, transfer, Rng::stream(seed, 1));
  RecordOptions options{cfg.record_stride, cfg.full_record};
  RunRecord record;
  if (plan.algorithm == Algorithm::kEpoch) {
    record = epoch_rgd_run(plan.schedule, plan.w1, oracle, objective, objective.domain(), rng, options);
  } else {
    SolverConfig sc{plan.params.eta, plan.params.gamma, plan.params.budget, plan.w1};
    record = rgd_run(sc, oracle, objective, objective.domain(), rng, options);
  }
  record.seed = seed;
  return record;
}

Aggregate aggregate(const std::vector<SummaryRow>& rows, double eps) {
  Aggregate agg;
  if (rows.empty()) return agg;
  std::vector<double> gaps;
  KahanSum sum;
  for (const auto& r : rows) {
    gaps.push_back(r.min_gap);
    sum.add(r.min_gap);
    if (r.min_gap <= eps) ++agg.successes;
  }
  std::sort(gaps.begin(), gaps.end());
  const std::size_t n = gaps.size();
  agg.mean_min_gap = sum.value() / static_cast<double>(n);
  agg.median_min_gap = n % 2 == 1 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
  agg.success_fraction = static_cast<double>(agg.successes) / static_cast<double>(n);
  return agg;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const RunRecord& record) {
  out << kTrajectoryHeader << '\n';
  for (const auto& row : record.rows) {
    out << row.t << ',' << row.queries << ',' << format_double(row.gap) << ','
        << format_double(row.dist_sq) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.trial << ',' << r.seed << ',' << r.total_queries << ',' << format_double(r.min_gap)
        << ',' << format_double(r.final_gap) << ',' << format_double(r.final_dist_sq) << ','
        << format_double(r.wall_time_ms) << '\n';
  }
}

std::string summary_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
  json j;
  j["config"] = config_json(cfg);
  json plan;
  plan["algorithm"] = to_string(result.plan.algorithm);
  if (result.plan.algorithm == Algorithm::kRgd) {
    plan["gamma"] = result.plan.params.gamma;
    plan["eta"] = result.plan.params.eta;
    plan["budget"] = result.plan.params.budget;
  } else {
    const EpochSchedule& s = result.plan.schedule;
    plan["k_eps"] = s.k_eps;
    plan["B"] = s.B;
    json epochs = json::array();
    for (const auto& e : s.epochs) {
      epochs.push_back({{"k", e.k}, {"radius", e.radius}, {"eta", e.eta}, {"gamma", e.gamma},
                        {"budget", e.budget}});
    }
    plan["epochs"] = epochs;
    plan["total_queries"] = s.total_queries();
  }
  plan["w1"] = std::vector<double>(result.plan.w1.data(), result.plan.w1.data() + result.plan.w1.size());
  j["plan"] = plan;
  json trials = json::array();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SummaryRow& r = result.rows[i];
    json row = {{"trial", r.trial},
                {"seed", r.seed},
                {"total_queries", r.total_queries},
                {"min_gap", r.min_gap},
                {"argmin_t", result.records[i].argmin_t},
                {"final_gap", r.final_gap},
                {"final_dist_sq", r.final_dist_sq},
                {"wall_time_ms", r.wall_time_ms}};
    if (!result.records[i].epochs.empty()) {
      json epochs = json::array();
      for (const auto& e : result.records[i].epochs) {
        epochs.push_back({{"k", e.k}, {"queries", e.queries}, {"dist_sq_start", e.dist_sq_start},
                          {"dist_sq_end", e.dist_sq_end}});
      }
      row["epochs"] = epochs;
    }
    trials.push_back(row);
  }
  j["trials"] = trials;
  j["aggregate"] = {{"mean_min_gap", result.aggregate.mean_min_gap},
                    {"median_min_gap", result.aggregate.median_min_gap},
                    {"successes", result.aggregate.successes},
                    {"success_fraction", result.aggregate.success_fraction},
                    {"eps", cfg.eps}};
  return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files) {
  cfg.validate();
  const TransferFunction transfer = build_transfer(cfg.transfer);
  ExperimentResult result;
  {
    const QuadraticObjective probe = build_objective(cfg.objective);
    result.plan = make_plan(cfg, probe, transfer);
  }
  double gamma_max = result.plan.params.gamma;
  for (const auto& e : result.plan.schedule.epochs) gamma_max = std::max(gamma_max, e.gamma);
  const QuadraticObjective objective = build_objective(cfg.objective, gamma_max);

  const auto trials = static_cast<std::size_t>(cfg.trials);
  result.records.resize(trials);
  result.rows.resize(trials);
  parallel_for(
      trials,
      [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        RunRecord record = run_trial(cfg, result.plan, objective, transfer, i);
        const auto stop = std::chrono::steady_clock::now();
        SummaryRow& row = result.rows[i];
        row.trial = i;
        row.seed = record.seed;
        row.total_queries = record.total_queries;
        row.min_gap = record.min_gap;
        row.final_gap = record.final_gap;
        row.final_dist_sq = record.final_dist_sq;
        // Timing breaks byte-identical reruns, so it is opt-in.
        row.wall_time_ms =
            cfg.record_timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
        result.records[i] = std::move(record);
      },
      cfg.jobs);
  result.aggregate = aggregate(result.rows, cfg.eps);

  if (write_files) {
    const std::filesystem::path dir(cfg.output);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
      throw Error(ErrorCode::kIo, "cannot create output directory " + dir.string());
    }
    for (std::size_t i = 0; i < trials; ++i) {
      std::ostringstream out;
      write_trajectory_csv(out, result.records[i]);
      write_file(dir / ("trajectory_" + std::to_string(i) + ".csv"), out.str());
    }
    std::ostringstream summary;
    write_summary_csv(summary, result.rows);
    write_file(dir / "summary.csv", summary.str());
    write_file(dir / "summary.json", summary_json(cfg, result));
  }
  return result;
}

bool DiagnosticsOutcome::all_passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.verdict; });
}

namespace {

BallDomain unit_ball(Eigen::Index d) { return BallDomain(Vector::Zero(d), 1.0); }

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

EstimateReport property_report(const std::string& objective_name, const InequalityCheck& check) {
  EstimateReport r;
  r.name = "objectives(" + objective_name + "):" + check.name;
  r.estimate = {check.max_violation};
  r.std_error = {0.0};
  r.n = check.samples;
  r.target = std::vector<double>{0.0};
  r.verdict = check.passed();
  r.details = {{"violations", static_cast<double>(check.violations)}};
  return r;
}

void ctilde_suite(std::vector<EstimateReport>& out, std::uint64_t seed, std::uint64_t n,
                  const MonteCarloOptions& opts) {
  std::uint64_t index = 0;
  for (std::size_t d : {1, 2, 3, 5, 10, 50, 200}) {
    Rng rng = Rng::stream(seed, index++);
    out.push_back(estimate_ctilde(d, n, rng, opts));
  }
}

void fkm_suite(std::vector<EstimateReport>& out, std::uint64_t seed, std::uint64_t n,
               const MonteCarloOptions& opts) {
  std::vector<Vector> cases;
  Vector a(3);
  a << 1.0, 2.0, 3.0;
  cases.push_back(a);
  cases.push_back(vec2(1.0, 0.0));
  cases.push_back(Vector::Zero(3));
  Rng gen = Rng::stream(seed, 1000);
  for (Eigen::Index d : {2, 3, 10}) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = gen.normal();
    cases.push_back(v);
  }
  std::uint64_t index = 100;
  for (const Vector& v : cases) {
    Rng rng = Rng::stream(seed, index++);
    out.push_back(check_fkm_identity(v, n, rng, opts));
  }
}

void alignment_suite(std::vector<EstimateReport>& out, std::uint64_t seed, std::uint64_t n,
                     const MonteCarloOptions& opts) {
  const auto obj = make_diagonal_quadratic({1.0, 1.0}, Vector::Zero(2), unit_ball(2));
  const auto linear = TransferFunction::linear(1.0);
  const auto sign = TransferFunction::sign();
  const Vector w = vec2(1.0, 0.0);
  Rng r1 = Rng::stream(seed, 200);
  out.push_back(descent_alignment(w, obj, linear, 0.1, n, r1, opts));
  Rng r2 = Rng::stream(seed, 201);
  out.push_back(descent_alignment(w, obj, sign, 1e-4, n, r2, opts));
  Rng r3 = Rng::stream(seed, 202);
  out.push_back(descent_alignment(Vector::Zero(2), obj, sign, 0.1, n, r3, opts));
}

void progress_suite(std::vector<EstimateReport>& out, std::uint64_t seed, std::uint64_t n,
                    const MonteCarloOptions& opts) {
  const auto obj = make_diagonal_quadratic({1.0, 1.0}, Vector::Zero(2), unit_ball(2));
  const auto linear = TransferFunction::linear(1.0);
  const auto sign = TransferFunction::sign();
  const Vector w = vec2(1.0, 0.0);
  const TunedParams lt = tune_linear(0.4, obj.beta(), 2, obj.domain().diameter(), 1.0);
  Rng r1 = Rng::stream(seed, 300);
  out.push_back(roundwise_progress_check(w, SolverConfig{lt.eta, lt.gamma, 1, w}, obj, linear, n, r1, opts));
  Rng r2 = Rng::stream(seed, 301);
  out.push_back(roundwise_progress_check(w, SolverConfig{0.01, 0.01, 1, w}, obj, sign, n, r2, opts));
  Rng r3 = Rng::stream(seed, 302);
  out.push_back(roundwise_progress_check(w, SolverConfig{0.0, 0.1, 1, w}, obj, linear, n, r3, opts));
}

void scaled_gradient_suite(std::vector<EstimateReport>& out, std::uint64_t seed, std::uint64_t n,
                           const MonteCarloOptions& opts) {
  const auto obj = make_diagonal_quadratic({1.0, 1.0}, Vector::Zero(2), unit_ball(2));
  const Vector w = vec2(1.0, 0.0);
  Rng r1 = Rng::stream(seed, 400);
  out.push_back(scaled_gradient_estimate(w, obj, TransferFunction::sign(), 1e-4, n, r1, opts));
  Rng r2 = Rng::stream(seed, 401);
  out.push_back(scaled_gradient_estimate(w, obj, TransferFunction::linear(1.0), 0.1, n, r2, opts));
}

void objectives_suite(std::vector<EstimateReport>& out, std::uint64_t seed) {
  struct Case {
    const char* name;
    std::vector<double> eigenvalues;
    Vector wstar;
  };
  const std::vector<Case> cases{{"I2", {1.0, 1.0}, Vector::Zero(2)},
                                {"diag(4,1)", {4.0, 1.0}, vec2(0.2, -0.1)},
                                {"diag(1,0.5)", {1.0, 0.5}, vec2(0.3, -0.2)},
                                {"diag(1,0)", {1.0, 0.0}, Vector::Zero(2)}};
  constexpr std::size_t kPairs = 10000;
  std::uint64_t index = 500;
  for (const auto& c : cases) {
    const auto obj = make_diagonal_quadratic(c.eigenvalues, c.wstar, unit_ball(2));
    std::vector<PropertyReport> reports;
    Rng r1 = Rng::stream(seed, index++);
    reports.push_back(check_smooth_convex(obj, kPairs, r1));
    if (obj.alpha() > 0.0) {
      Rng r2 = Rng::stream(seed, index++);
      reports.push_back(check_strong_smooth_coercivity(obj, kPairs, r2));
    }
    Rng r3 = Rng::stream(seed, index++);
    reports.push_back(check_minimizer_properties(obj, kPairs, r3));
    Rng r4 = Rng::stream(seed, index++);
    reports.push_back(check_gradient(obj, 1000, r4));
    for (const auto& rep : reports) {
      for (const auto& check : rep.checks) out.push_back(property_report(c.name, check));
    }
  }
}

}  // namespace

DiagnosticsOutcome run_diagnostics(const std::string& suite, std::uint64_t seed, std::uint64_t n,
                                   unsigned jobs) {
  const auto& suites = diagnostic_suites();
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    config_error("suite", "unknown suite '" + suite + "'");
  }
  MonteCarloOptions opts;
  opts.jobs = jobs;
  DiagnosticsOutcome outcome;
  auto& out = outcome.reports;
  const bool all = suite == "all";
  if (all || suite == "ctilde") ctilde_suite(out, seed, n, opts);
  if (all || suite == "fkm") fkm_suite(out, seed, n, opts);
  if (all || suite == "alignment") alignment_suite(out, seed, n, opts);
  if (all || suite == "progress") progress_suite(out, seed, n, opts);
  if (all || suite == "scaled-gradient") scaled_gradient_suite(out, seed, n, opts);
  if (all || suite == "objectives") objectives_suite(out, seed);
  return outcome;
}

std::string render_tuning(const TuneRequest& req) {
  std::ostringstream out;
  if (req.algorithm == Algorithm::kEpoch) {
    const EpochSchedule s =
        tune_epoch(req.eps, req.alpha, req.beta, req.d, req.D, req.p, req.c_rho, req.ctilde);
    if (s.trivial) {
      out << "trivial: every feasible point is ε-optimal\n";
      return out.str();
    }
    out << "k_eps = " << s.k_eps << '\n';
    out << "B = " << format_sig(s.B) << '\n';
    out << "k,D_k,eta_k,gamma_k,t_k\n";
    for (const auto& e : s.epochs) {
      out << e.k << ',' << format_sig(e.radius) << ',' << format_sig(e.eta) << ','
          << format_sig(e.gamma) << ',' << e.budget << '\n';
    }
    out << "sum_t_k = " << s.total_queries() << '\n';
    return out.str();
  }

  TunedParams params;
  switch (req.mode) {
    case TuningMode::kTheorem:
      params = req.p == 0 ? tune_sign(req.eps, req.beta, req.d, req.D, req.sign_constant, req.ctilde)
                          : tune_smooth(req.eps, req.beta, req.d, req.D, req.p, req.c_rho, req.ctilde);
      break;
    case TuningMode::kLinear:
      params = tune_linear(req.eps, req.beta, req.d, req.D, req.c_rho);
      break;
    case TuningMode::kSign:
      params = tune_sign(req.eps, req.beta, req.d, req.D, req.sign_constant, req.ctilde);
      break;
    case TuningMode::kManual:
      config_error("tuning.mode", "manual parameters need no tuning");
  }
  out << "gamma = " << format_sig(params.gamma) << '\n';
  out << "eta = " << format_sig(params.eta) << '\n';
  out << "T = " << params.budget << '\n';
  return out.str();
}

}  // namespace duelgrad::harness
