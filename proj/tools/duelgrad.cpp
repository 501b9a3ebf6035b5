// duelgrad command-line driver: run, diagnose, tune.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "duelgrad/error.hpp"
#include "duelgrad/harness.hpp"

namespace {

using namespace duelgrad;
using namespace duelgrad::harness;

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code(const Error& e) { return e.code() == ErrorCode::kIo ? kExitIo : kExitConfig; }

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("DUELGRAD_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kConfig, "DUELGRAD_SEED: expected an unsigned 64-bit integer");
  }
  return value;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> jobs;
  std::optional<std::string> out;
  std::optional<std::uint64_t> stride;
  std::optional<double> eps;
  std::optional<std::string> algorithm;
  std::optional<std::string> tuning;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<std::uint64_t> budget;
  std::optional<double> ctilde;
  std::optional<double> sign_constant;
  std::optional<std::string> transfer;
  std::optional<double> c_rho;
  std::optional<double> omega;
  std::optional<int> p;
  std::vector<double> eigenvalues;
  std::vector<double> minimizer;
  std::vector<double> center;
  std::optional<double> radius;
  std::vector<double> w1;
  bool full_record = false;
  bool timing = false;
};

ExperimentConfig resolve_config(const RunFlags& f) {
  ExperimentConfig cfg;
  bool config_has_seed = false;
  if (!f.config.empty()) {
    const std::string text = read_text(f.config);
    cfg = parse_config(text);
    config_has_seed = nlohmann::json::parse(text).contains("base_seed");
  }
  // Seed precedence: flag, then config file, then DUELGRAD_SEED.
  if (f.seed) {
    cfg.base_seed = *f.seed;
  } else if (!config_has_seed) {
    if (auto s = env_seed()) cfg.base_seed = *s;
  }
  if (f.trials) cfg.trials = *f.trials;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.out) cfg.output = *f.out;
  if (f.stride) cfg.record_stride = *f.stride;
  if (f.eps) cfg.eps = *f.eps;
  if (f.algorithm) {
    const auto a = parse_algorithm(*f.algorithm);
    if (!a) throw Error(ErrorCode::kConfig, "algorithm: unknown algorithm '" + *f.algorithm + "'");
    cfg.algorithm = *a;
  }
  if (f.tuning) {
    const auto m = parse_tuning_mode(*f.tuning);
    if (!m) throw Error(ErrorCode::kConfig, "tuning.mode: unknown mode '" + *f.tuning + "'");
    cfg.tuning.mode = *m;
  }
  if (f.eta) cfg.tuning.eta = *f.eta;
  if (f.gamma) cfg.tuning.gamma = *f.gamma;
  if (f.budget) cfg.tuning.budget = *f.budget;
  if (f.ctilde) cfg.tuning.ctilde = *f.ctilde;
  if (f.sign_constant) cfg.tuning.sign_constant = *f.sign_constant;
  if (f.transfer) {
    const auto k = parse_transfer_kind(*f.transfer);
    if (!k) throw Error(ErrorCode::kConfig, "transfer.kind: unknown transfer '" + *f.transfer + "'");
    cfg.transfer.kind = *k;
  }
  if (f.c_rho) cfg.transfer.c_rho = *f.c_rho;
  if (f.omega) cfg.transfer.omega = *f.omega;
  if (f.p) cfg.transfer.p = *f.p;
  if (!f.eigenvalues.empty()) cfg.objective.eigenvalues = f.eigenvalues;
  if (!f.minimizer.empty()) cfg.objective.minimizer = f.minimizer;
  if (!f.center.empty()) cfg.objective.domain_center = f.center;
  if (f.radius) cfg.objective.domain_radius = *f.radius;
  if (!f.w1.empty()) cfg.w1 = f.w1;
  if (f.full_record) cfg.full_record = true;
  if (f.timing) cfg.record_timing = true;
  cfg.validate();
  return cfg;
}

int cmd_run(const RunFlags& flags) {
  const ExperimentConfig cfg = resolve_config(flags);
  const ExperimentResult result = run_experiment(cfg);
  const Aggregate& agg = result.aggregate;
  std::cout << "trials: " << result.rows.size() << '\n'
            << "mean_min_gap: " << format_double(agg.mean_min_gap) << '\n'
            << "median_min_gap: " << format_double(agg.median_min_gap) << '\n'
            << "success_fraction (min_gap <= " << format_double(cfg.eps)
            << "): " << format_double(agg.success_fraction) << " (" << agg.successes << "/"
            << result.rows.size() << ")\n"
            << "output: " << cfg.output << '\n';
  return kExitOk;
}

struct DiagnoseFlags {
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::uint64_t n = 1000000;
  unsigned jobs = 0;
  std::string out;
};

int cmd_diagnose(const DiagnoseFlags& f) {
  std::uint64_t seed = 0;
  if (f.seed) {
    seed = *f.seed;
  } else if (auto s = env_seed()) {
    seed = *s;
  }
  const DiagnosticsOutcome outcome = run_diagnostics(f.suite, seed, f.n, f.jobs);
  const std::string report = to_json(outcome.reports) + "\n";
  if (f.out.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(f.out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + f.out + " for writing");
    out << report;
    if (!out.flush()) throw Error(ErrorCode::kIo, "write failed for " + f.out);
  }
  std::size_t failed = 0;
  for (const auto& r : outcome.reports) {
    if (!r.verdict) {
      ++failed;
      std::cerr << "FAIL " << r.name << '\n';
    }
  }
  std::cerr << outcome.reports.size() - failed << "/" << outcome.reports.size()
            << " diagnostics passed\n";
  return failed == 0 ? kExitOk : kExitDiagnostics;
}

struct TuneFlags {
  std::string algorithm = "rgd";
  std::string mode = "theorem";
  TuneRequest request;
};

int cmd_tune(TuneFlags f) {
  const auto a = parse_algorithm(f.algorithm);
  if (!a) throw Error(ErrorCode::kConfig, "algorithm: unknown algorithm '" + f.algorithm + "'");
  const auto m = parse_tuning_mode(f.mode);
  if (!m) throw Error(ErrorCode::kConfig, "mode: unknown mode '" + f.mode + "'");
  f.request.algorithm = *a;
  f.request.mode = *m;
  std::cout << render_tuning(f.request);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duelgrad: convex optimisation from noisy pairwise comparisons"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run seeded trials and write CSV/JSON output");
  run_cmd->add_option("--config", run.config, "JSON experiment config");
  run_cmd->add_option("--seed", run.seed, "Base seed (trial i uses seed + i)");
  run_cmd->add_option("--trials", run.trials, "Number of trials");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (0 = all cores)");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--stride", run.stride, "Trajectory row spacing (0 = auto)");
  run_cmd->add_option("--eps", run.eps, "Target accuracy");
  run_cmd->add_option("--algorithm", run.algorithm, "rgd | epoch");
  run_cmd->add_option("--tuning", run.tuning, "theorem | linear | sign | manual");
  run_cmd->add_option("--eta", run.eta, "Step size (manual tuning)");
  run_cmd->add_option("--gamma", run.gamma, "Perturbation radius (manual tuning)");
  run_cmd->add_option("--budget", run.budget, "Query budget T (manual tuning)");
  run_cmd->add_option("--ctilde", run.ctilde, "Sphere constant used by the tuning formulas");
  run_cmd->add_option("--sign-constant", run.sign_constant, "Budget multiplier for sign tuning");
  run_cmd->add_option("--transfer", run.transfer, "sign | linear | sigmoid | poly | series");
  run_cmd->add_option("--c-rho", run.c_rho, "Transfer slope constant");
  run_cmd->add_option("--omega", run.omega, "Sigmoid sharpness");
  run_cmd->add_option("--p", run.p, "Polynomial proxy degree");
  run_cmd->add_option("--eigenvalues", run.eigenvalues, "Diagonal Hessian entries");
  run_cmd->add_option("--minimizer", run.minimizer, "Minimiser w*");
  run_cmd->add_option("--center", run.center, "Domain centre");
  run_cmd->add_option("--radius", run.radius, "Domain radius");
  run_cmd->add_option("--w1", run.w1, "Starting point");
  run_cmd->add_flag("--full-record", run.full_record, "Record every iterate");
  run_cmd->add_flag("--timing", run.timing, "Write wall-clock times (breaks byte-identical reruns)");

  DiagnoseFlags diag;
  auto* diag_cmd = app.add_subcommand("diagnose", "Monte-Carlo checks; exit 1 on any failed verdict");
  diag_cmd->add_option("--suite", diag.suite, "ctilde | fkm | alignment | progress | scaled-gradient | objectives | all");
  diag_cmd->add_option("--seed", diag.seed, "Base seed");
  diag_cmd->add_option("--n", diag.n, "Samples per estimate");
  diag_cmd->add_option("--jobs", diag.jobs, "Worker threads (0 = all cores)");
  diag_cmd->add_option("--out", diag.out, "Write the JSON report here instead of stdout");

  TuneFlags tune;
  auto* tune_cmd = app.add_subcommand("tune", "Print tuned parameters or the epoch schedule");
  tune_cmd->add_option("--algorithm", tune.algorithm, "rgd | epoch");
  tune_cmd->add_option("--mode", tune.mode, "theorem | linear | sign");
  tune_cmd->add_option("--eps", tune.request.eps, "Target accuracy");
  tune_cmd->add_option("--beta", tune.request.beta, "Smoothness constant");
  tune_cmd->add_option("--alpha", tune.request.alpha, "Strong-convexity constant (epoch)");
  tune_cmd->add_option("--d", tune.request.d, "Dimension");
  tune_cmd->add_option("--diameter", tune.request.D, "Domain diameter D");
  tune_cmd->add_option("--p", tune.request.p, "Proxy degree (0 = sign)");
  tune_cmd->add_option("--c-rho", tune.request.c_rho, "Proxy constant");
  tune_cmd->add_option("--ctilde", tune.request.ctilde, "Sphere constant");
  tune_cmd->add_option("--sign-constant", tune.request.sign_constant, "Budget multiplier for sign tuning");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*diag_cmd) return cmd_diagnose(diag);
    if (*tune_cmd) return cmd_tune(tune);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
