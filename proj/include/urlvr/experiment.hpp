#pragma once

// Experiment front end: flat key=value configs, the four run modes
// (dynamics, train, collapse, countdown), the pinned CSV trace schema, and
// optional SVG line plots. Every run is reproducible byte-for-byte from
// (config, seed).

#include "urlvr/dynamics.hpp"
#include "urlvr/trainer.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace urlvr {

/// One row of the trace schema. Absent fields serialize as empty.
struct TraceRow {
  std::size_t step = 0;
  std::optional<double> p_maj, epsilon, mv_reward, gt_reward, reward_acc, label_acc,
      actor_entropy, kl_drift, eta_hat;
};

inline constexpr const char* kTraceHeader =
    "step,p_maj,epsilon,mv_reward,gt_reward,reward_acc,label_acc,actor_entropy,kl_drift,eta_hat";

/// Serializes rows under the pinned header with %.12g numbers, UTF-8 and LF
/// endings. Throws on an empty trace.
std::string trace_to_csv(const std::vector<TraceRow>& rows);

enum class ExperimentMode { dynamics, train, collapse, countdown };

struct DynamicsSpec {
  double p0 = 0.1;
  double beta = 1.0;
  std::vector<double> eta{1.0};
  std::size_t steps = 50;
};

struct TrainSpec {
  TrainConfig config;
  std::string problems_file;   // serialized space blocks; or generate:
  std::size_t gen_problems = 0;
  std::size_t gen_trajectories = 8;
  std::size_t gen_answers = 3;
};

struct CollapseSpec {
  std::string trace_file;
  std::string column = "reward_acc";
  double threshold = 0.01;
};

struct CountdownSpec {
  std::string cases_file;
  std::string candidate = "oracle";  // oracle | constant-true | zero-tolerance
  double tolerance = 1e-6;
};

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::dynamics;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::vector<std::string> plot_columns;  // empty: no plot.svg

  DynamicsSpec dynamics;
  TrainSpec train;
  CollapseSpec collapse;
  CountdownSpec countdown;
};

/// Parses the flat key=value format. Throws ConfigError on unknown keys,
/// malformed values, a missing mode, or keys namespaced to another mode.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct RunResult {
  std::string out_dir;       // resolved output directory
  std::string trace_path;    // trace.csv
  std::string summary_path;  // summary.txt
  std::optional<std::string> plot_path;
};

/// Executes a parsed config: writes trace.csv, summary.txt and optionally
/// plot.svg under the output directory. URLVR_LAB_OUT overrides out_dir.
/// Throws ConfigError for config-level problems and std::runtime_error for
/// runtime failures.
RunResult run_experiment(const ExperimentConfig& config);

/// Convenience: load + run a config file.
RunResult run_experiment_file(const std::string& path);

/// Deterministic problem generator used by train mode and the test suites:
/// `count` independent problems, each with `trajectories` length-1
/// trajectories over `answers` candidate answers, logits standard normal,
/// and a ground truth drawn uniformly. Instances with a top-two answer-mass
/// gap below `min_gap` are rejected and redrawn.
std::vector<Problem> generate_problems(std::size_t count, std::size_t trajectories,
                                       std::size_t answers, std::uint64_t seed,
                                       double min_gap = 0.0);

}  // namespace urlvr
