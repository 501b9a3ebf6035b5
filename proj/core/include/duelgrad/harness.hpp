#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duelgrad/diagnostics.hpp"
#include "duelgrad/objectives.hpp"
#include "duelgrad/solver.hpp"
#include "duelgrad/transfer.hpp"
#include "duelgrad/tuning.hpp"

namespace duelgrad::harness {

inline constexpr const char* kTrajectoryHeader = "t,queries,gap,dist_sq";
inline constexpr const char* kSummaryHeader =
    "trial,seed,total_queries,min_gap,final_gap,final_dist_sq,wall_time_ms";

struct ObjectiveSpec {
  std::string kind = "quadratic";
  std::vector<double> eigenvalues{1.0, 1.0};
  std::vector<double> minimizer{0.0, 0.0};
  std::vector<double> domain_center;  // empty: origin
  double domain_radius = 1.0;
};

struct TransferSpec {
  TransferKind kind = TransferKind::kSign;
  double c_rho = 1.0;
  double omega = 1.0;
  int p = 1;
  SeriesSpec series;
};

enum class Algorithm { kRgd, kEpoch };
enum class TuningMode { kTheorem, kLinear, kSign, kManual };

struct TuningSpec {
  TuningMode mode = TuningMode::kTheorem;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<std::uint64_t> budget;
  double ctilde = kDefaultCtilde;
  double sign_constant = kDefaultSignConstant;
};

struct ExperimentConfig {
  ObjectiveSpec objective;
  TransferSpec transfer;
  Algorithm algorithm = Algorithm::kRgd;
  TuningSpec tuning;
  double eps = 0.01;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  std::uint64_t record_stride = 0;
  bool full_record = false;
  std::optional<std::vector<double>> w1;  // default: centre + radius e_1
  std::string output = "out";
  unsigned jobs = 0;
  bool record_timing = false;

  /// Throws Error(kConfig) naming the offending field.
  void validate() const;
};

/// Parses a JSON config. Unknown keys are rejected. Throws Error(kConfig).
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string to_json(const ExperimentConfig& cfg);

std::optional<TransferKind> parse_transfer_kind(const std::string& name);
std::optional<Algorithm> parse_algorithm(const std::string& name);
std::optional<TuningMode> parse_tuning_mode(const std::string& name);
const char* to_string(Algorithm a);
const char* to_string(TuningMode m);

QuadraticObjective build_objective(const ObjectiveSpec& spec, double gamma_max = 0.0);
TransferFunction build_transfer(const TransferSpec& spec);

/// Resolved parameters for one configuration.
struct Plan {
  Algorithm algorithm = Algorithm::kRgd;
  TunedParams params;       // rgd
  EpochSchedule schedule;   // epoch
  Vector w1;
};

Plan make_plan(const ExperimentConfig& cfg, const Objective& objective,
               const TransferFunction& transfer);

struct SummaryRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_queries = 0;
  double min_gap = 0.0;
  double final_gap = 0.0;
  double final_dist_sq = 0.0;
  double wall_time_ms = 0.0;
};

struct Aggregate {
  double mean_min_gap = 0.0;
  double median_min_gap = 0.0;
  std::uint64_t successes = 0;
  double success_fraction = 0.0;
};

struct ExperimentResult {
  Plan plan;
  std::vector<SummaryRow> rows;
  std::vector<RunRecord> records;
  Aggregate aggregate;
};

/// Runs one seeded trial (seed = base_seed + trial) without touching disk.
RunRecord run_trial(const ExperimentConfig& cfg, const Plan& plan, const Objective& objective,
                    const TransferFunction& transfer, std::uint64_t trial);

/// Executes every trial and, when `write_files` is set, writes
/// trajectory_<trial>.csv, summary.csv and summary.json under cfg.output.
/// IO failures throw Error(kIo).
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files = true);

Aggregate aggregate(const std::vector<SummaryRow>& rows, double eps);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
/// Fixed significant-digit text (printf %.Ng).
std::string format_sig(double x, int digits = 12);

void write_trajectory_csv(std::ostream& out, const RunRecord& record);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::string summary_json(const ExperimentConfig& cfg, const ExperimentResult& result);

inline const std::vector<std::string>& diagnostic_suites() {
  static const std::vector<std::string> suites{
      "ctilde", "fkm", "alignment", "progress", "scaled-gradient", "objectives", "all"};
  return suites;
}

struct DiagnosticsOutcome {
  std::vector<EstimateReport> reports;
  bool all_passed() const;
};

/// Runs the named suite at its default configurations. Throws Error(kConfig)
/// for an unknown suite.
DiagnosticsOutcome run_diagnostics(const std::string& suite, std::uint64_t seed,
                                   std::uint64_t n, unsigned jobs = 0);

struct TuneRequest {
  Algorithm algorithm = Algorithm::kRgd;
  TuningMode mode = TuningMode::kTheorem;
  double eps = 0.1;
  double beta = 1.0;
  double alpha = 0.0;
  int d = 2;
  double D = 1.0;
  int p = 1;
  double c_rho = 1.0;
  double ctilde = kDefaultCtilde;
  double sign_constant = kDefaultSignConstant;
};

/// Human-readable tuned parameters at 12 significant digits, or the epoch
/// table with its total.
std::string render_tuning(const TuneRequest& request);

}  // namespace duelgrad::harness
