#include "urlvr/experiment.hpp"

#include "urlvr/countdown.hpp"
#include "urlvr/metrics.hpp"
#include "urlvr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace urlvr {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

const std::vector<std::string>& column_names() {
  static const std::vector<std::string> names = {
      "p_maj", "epsilon", "mv_reward", "gt_reward", "reward_acc",
      "label_acc", "actor_entropy", "kl_drift", "eta_hat"};
  return names;
}

std::optional<double> column_value(const TraceRow& row, const std::string& name) {
  if (name == "p_maj") return row.p_maj;
  if (name == "epsilon") return row.epsilon;
  if (name == "mv_reward") return row.mv_reward;
  if (name == "gt_reward") return row.gt_reward;
  if (name == "reward_acc") return row.reward_acc;
  if (name == "label_acc") return row.label_acc;
  if (name == "actor_entropy") return row.actor_entropy;
  if (name == "kl_drift") return row.kl_drift;
  if (name == "eta_hat") return row.eta_hat;
  throw ConfigError("unknown trace column: " + name);
}

void set_column(TraceRow& row, const std::string& name, double value) {
  if (name == "p_maj") row.p_maj = value;
  else if (name == "epsilon") row.epsilon = value;
  else if (name == "mv_reward") row.mv_reward = value;
  else if (name == "gt_reward") row.gt_reward = value;
  else if (name == "reward_acc") row.reward_acc = value;
  else if (name == "label_acc") row.label_acc = value;
  else if (name == "actor_entropy") row.actor_entropy = value;
  else if (name == "kl_drift") row.kl_drift = value;
  else if (name == "eta_hat") row.eta_hat = value;
  else throw ConfigError("unknown trace column: " + name);
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  if (rows.empty()) throw std::runtime_error("trace_to_csv: empty trace");
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& row : rows) {
    out += std::to_string(row.step);
    for (const auto& name : column_names()) {
      out += ',';
      out += fmt_opt(column_value(row, name));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty()) {
    throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() ||
      value.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("bad count value for " + key + ": '" + value + "'");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key in line: '" + line + "'");
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key: " + key);
  }

  const auto mode_it = kv.find("mode");
  if (mode_it == kv.end()) throw ConfigError("missing required key: mode");

  ExperimentConfig config;
  config.train.config.global_batch = 0;  // 0 = one step covers every problem
  config.train.config.mini_batch = 0;    // 0 = on-policy (mini == global)
  std::string mode_prefix;
  if (mode_it->second == "dynamics") {
    config.mode = ExperimentMode::dynamics;
    mode_prefix = "dynamics.";
  } else if (mode_it->second == "train") {
    config.mode = ExperimentMode::train;
    mode_prefix = "train.";
  } else if (mode_it->second == "collapse") {
    config.mode = ExperimentMode::collapse;
    mode_prefix = "collapse.";
  } else if (mode_it->second == "countdown") {
    config.mode = ExperimentMode::countdown;
    mode_prefix = "countdown.";
  } else {
    throw ConfigError("unknown mode: " + mode_it->second);
  }

  static const std::set<std::string> kModePrefixes = {"dynamics.", "train.", "collapse.",
                                                      "countdown."};

  for (const auto& [key, value] : kv) {
    if (key == "mode") continue;
    if (key == "out_dir") { config.out_dir = value; continue; }
    if (key == "seed") { config.seed = parse_count(key, value); continue; }
    if (key == "plot") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (std::find(column_names().begin(), column_names().end(), item) ==
            column_names().end()) {
          throw ConfigError("plot: unknown column: " + item);
        }
        config.plot_columns.push_back(item);
      }
      continue;
    }

    const auto dot = key.find('.');
    const std::string prefix = dot == std::string::npos ? "" : key.substr(0, dot + 1);
    if (!kModePrefixes.count(prefix)) throw ConfigError("unknown key: " + key);
    if (prefix != mode_prefix) {
      throw ConfigError("key '" + key + "' belongs to another mode block (mode=" +
                        mode_it->second + ")");
    }

    if (key == "dynamics.p0") config.dynamics.p0 = parse_double(key, value);
    else if (key == "dynamics.beta") config.dynamics.beta = parse_double(key, value);
    else if (key == "dynamics.eta") config.dynamics.eta = parse_double_list(key, value);
    else if (key == "dynamics.steps") config.dynamics.steps = parse_count(key, value);
    else if (key == "train.reward") config.train.config.reward_kind = estimator_kind_from_string(value);
    else if (key == "train.rollouts") config.train.config.n_rollouts = parse_count(key, value);
    else if (key == "train.global_batch") config.train.config.global_batch = parse_count(key, value);
    else if (key == "train.mini_batch") config.train.config.mini_batch = parse_count(key, value);
    else if (key == "train.lr") config.train.config.learning_rate = parse_double(key, value);
    else if (key == "train.kl_coef") config.train.config.kl_coef = parse_double(key, value);
    else if (key == "train.temperature") config.train.config.temperature = parse_double(key, value);
    else if (key == "train.steps") config.train.config.steps = parse_count(key, value);
    else if (key == "train.baseline") {
      if (value == "group-mean") config.train.config.baseline = TrainConfig::Baseline::group_mean;
      else if (value == "none") config.train.config.baseline = TrainConfig::Baseline::none;
      else throw ConfigError("train.baseline must be group-mean or none");
    } else if (key == "train.problems_file") config.train.problems_file = value;
    else if (key == "train.gen_problems") config.train.gen_problems = parse_count(key, value);
    else if (key == "train.gen_trajectories") config.train.gen_trajectories = parse_count(key, value);
    else if (key == "train.gen_answers") config.train.gen_answers = parse_count(key, value);
    else if (key == "collapse.trace_file") config.collapse.trace_file = value;
    else if (key == "collapse.column") config.collapse.column = value;
    else if (key == "collapse.threshold") config.collapse.threshold = parse_double(key, value);
    else if (key == "countdown.cases") config.countdown.cases_file = value;
    else if (key == "countdown.candidate") config.countdown.candidate = value;
    else if (key == "countdown.tolerance") config.countdown.tolerance = parse_double(key, value);
    else throw ConfigError("unknown key: " + key);
  }

  // mode-block level validation beyond types
  if (config.mode == ExperimentMode::collapse && config.collapse.trace_file.empty()) {
    throw ConfigError("collapse mode requires collapse.trace_file");
  }
  if (config.mode == ExperimentMode::countdown && config.countdown.cases_file.empty()) {
    throw ConfigError("countdown mode requires countdown.cases");
  }
  if (config.mode == ExperimentMode::countdown && config.countdown.candidate != "oracle" &&
      config.countdown.candidate != "constant-true" &&
      config.countdown.candidate != "zero-tolerance") {
    throw ConfigError("countdown.candidate must be oracle, constant-true or zero-tolerance");
  }
  if (config.mode == ExperimentMode::train && config.train.problems_file.empty() &&
      config.train.gen_problems == 0) {
    throw ConfigError("train mode requires train.problems_file or train.gen_problems");
  }
  if (config.mode == ExperimentMode::collapse) {
    if (std::find(column_names().begin(), column_names().end(), config.collapse.column) ==
        column_names().end()) {
      throw ConfigError("collapse.column: unknown column: " + config.collapse.column);
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config(buffer.str());
}

// ---------------------------------------------------------------------------
// Problem generation
// ---------------------------------------------------------------------------

std::vector<Problem> generate_problems(std::size_t count, std::size_t trajectories,
                                       std::size_t answers, std::uint64_t seed, double min_gap) {
  if (count == 0 || trajectories == 0 || answers == 0 || answers > trajectories) {
    throw std::invalid_argument("generate_problems: need trajectories >= answers >= 1");
  }
  std::vector<Problem> problems;
  problems.reserve(count);

  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > 1000) {
        throw std::runtime_error("generate_problems: min_gap rejection did not terminate");
      }
      Rng rng(mix_seed(seed, p, attempt));

      std::vector<double> logits(trajectories);
      for (auto& l : logits) {
        // Box-Muller; the pinned generator keeps this reproducible.
        const double u1 = std::max(rng.unit(), 1e-300);
        const double u2 = rng.unit();
        l = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      }
      const auto traj_probs = softmax(logits);

      std::vector<Trajectory> table;
      table.reserve(trajectories);
      char name[32];
      for (std::size_t i = 0; i < trajectories; ++i) {
        std::snprintf(name, sizeof(name), "a%02zu", i % answers);
        table.emplace_back(std::vector<std::size_t>{i},
                           std::vector<ProbabilityVector>{ProbabilityVector(traj_probs)},
                           std::string(name));
      }
      TabularPolicy policy(logits, std::move(table));

      if (min_gap > 0.0) {
        auto masses = answer_masses(policy);
        std::sort(masses.begin(), masses.end(), std::greater<>());
        if (masses.size() >= 2 && masses[0] - masses[1] < min_gap) continue;
      }

      std::snprintf(name, sizeof(name), "a%02llu",
                    static_cast<unsigned long long>(rng.below(answers)));
      AnswerSpace space(policy.answer_set(), std::string(name));
      problems.push_back(Problem{std::move(policy), std::move(space)});
      break;
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Run modes
// ---------------------------------------------------------------------------

namespace {

struct ModeOutput {
  std::vector<TraceRow> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

ModeOutput run_dynamics(const ExperimentConfig& config) {
  const auto& spec = config.dynamics;
  const auto params = DynamicsParams::create(spec.beta, EtaSchedule::per_step(spec.eta));
  const auto trace = simulate_recurrence(spec.p0, params, spec.steps);

  ModeOutput out;
  out.rows.reserve(trace.states.size());
  for (const auto& state : trace.states) {
    TraceRow row;
    row.step = state.iteration;
    row.p_maj = state.p_maj;
    row.epsilon = state.epsilon;
    row.eta_hat = params.eta.at(state.iteration - 1);
    out.rows.push_back(row);
  }

  const auto& states = trace.states;
  out.summary.emplace_back("steps", std::to_string(states.size()));
  out.summary.emplace_back("p0", fmt(spec.p0));
  out.summary.emplace_back("beta", fmt(spec.beta));
  out.summary.emplace_back("final_p_maj", fmt(states.back().p_maj));
  out.summary.emplace_back("final_epsilon", fmt(states.back().epsilon));
  if (states.size() >= 2 && states[states.size() - 2].epsilon > 0.0) {
    out.summary.emplace_back(
        "final_epsilon_ratio",
        fmt(states.back().epsilon / states[states.size() - 2].epsilon));
  }
  out.summary.emplace_back("theoretical_rate", fmt(std::exp(-1.0 / spec.beta)));
  out.summary.emplace_back("envelope_bound",
                           fmt(trace.degenerate
                                   ? states.back().epsilon
                                   : geometric_envelope(spec.p0, params, states.size())));
  if (trace.degenerate) out.summary.emplace_back("degenerate", "true");
  return out;
}

ModeOutput run_train(const ExperimentConfig& config) {
  auto spec = config.train;
  spec.config.seed = config.seed;

  std::vector<Problem> problems;
  if (!spec.problems_file.empty()) {
    problems = load_problems(spec.problems_file);
  } else {
    problems = generate_problems(spec.gen_problems, spec.gen_trajectories, spec.gen_answers,
                                 config.seed);
  }
  if (spec.config.global_batch == 0) spec.config.global_batch = problems.size();
  if (spec.config.mini_batch == 0) spec.config.mini_batch = spec.config.global_batch;

  const auto trace = train(spec.config, problems);

  ModeOutput out;
  out.rows.reserve(trace.steps.size());
  for (const auto& record : trace.steps) {
    TraceRow row;
    row.step = record.step;
    double p_sum = 0.0;
    for (double p : record.p_maj) p_sum += p;
    row.p_maj = p_sum / static_cast<double>(record.p_maj.size());
    row.epsilon = 1.0 - *row.p_maj;
    row.mv_reward = record.mean_reward;
    row.gt_reward = record.gt_reward;
    row.reward_acc = record.reward_accuracy;
    row.label_acc = record.label_accuracy;
    row.actor_entropy = record.actor_entropy;
    row.kl_drift = record.kl_drift;
    row.eta_hat = record.eta_hat;
    out.rows.push_back(row);
  }

  const auto& last = out.rows.back();
  out.summary.emplace_back("steps", std::to_string(trace.steps.size()));
  out.summary.emplace_back("problems", std::to_string(problems.size()));
  out.summary.emplace_back("reward", to_string(spec.config.reward_kind));
  out.summary.emplace_back("final_p_maj", fmt_opt(last.p_maj));
  out.summary.emplace_back("final_mv_reward", fmt_opt(last.mv_reward));
  out.summary.emplace_back("final_gt_reward", fmt_opt(last.gt_reward));
  out.summary.emplace_back("final_reward_acc", fmt_opt(last.reward_acc));
  out.summary.emplace_back("final_label_acc", fmt_opt(last.label_acc));
  out.summary.emplace_back("final_actor_entropy", fmt_opt(last.actor_entropy));
  out.summary.emplace_back("final_kl_drift", fmt_opt(last.kl_drift));
  out.summary.emplace_back("total_majority_flips", std::to_string(trace.total_flips));
  return out;
}

ModeOutput run_collapse(const ExperimentConfig& config) {
  const auto& spec = config.collapse;
  std::ifstream is(spec.trace_file);
  if (!is) throw std::runtime_error("cannot open trace file: " + spec.trace_file);

  // malformed trace content is a runtime failure, not a config error
  auto parse_cell = [&](const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw std::runtime_error("bad value in trace file: '" + text + "'");
    }
    return v;
  };

  std::vector<double> values;
  std::string line;
  bool first = true;
  std::optional<std::size_t> column_index;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == kTraceHeader) {
      // unified trace: pick out the requested column
      const auto& names = column_names();
      const auto it = std::find(names.begin(), names.end(), spec.column);
      column_index = static_cast<std::size_t>(it - names.begin()) + 1;  // after 'step'
      first = false;
      continue;
    }
    first = false;
    if (column_index) {
      std::stringstream ss(line);
      std::string cell;
      for (std::size_t i = 0; i <= *column_index; ++i) {
        if (!std::getline(ss, cell, ',')) {
          throw std::runtime_error("trace row has too few columns: " + line);
        }
      }
      if (cell.empty()) {
        throw std::runtime_error("trace column '" + spec.column + "' is empty in row: " + line);
      }
      values.push_back(parse_cell(cell));
    } else {
      values.push_back(parse_cell(trim(line)));
    }
  }
  if (values.empty()) throw std::runtime_error("no values in trace file: " + spec.trace_file);

  const auto step = model_collapse_step(values, spec.threshold);

  ModeOutput out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    TraceRow row;
    row.step = i + 1;
    set_column(row, spec.column, values[i]);
    out.rows.push_back(row);
  }
  out.summary.emplace_back("column", spec.column);
  out.summary.emplace_back("threshold", fmt(spec.threshold));
  out.summary.emplace_back("values", std::to_string(values.size()));
  out.summary.emplace_back("collapse_step", step ? std::to_string(*step) : "none");
  return out;
}

ModeOutput run_countdown(const ExperimentConfig& config) {
  const auto& spec = config.countdown;
  const auto cases = countdown::load_cases(spec.cases_file);

  countdown::CandidateVerifier candidate;
  if (spec.candidate == "oracle") {
    const double tol = spec.tolerance;
    candidate = [tol](const std::string& expr, const countdown::CountdownProblem& problem) {
      return countdown::verify(expr, problem, tol).valid;
    };
  } else if (spec.candidate == "constant-true") {
    candidate = [](const std::string&, const countdown::CountdownProblem&) { return true; };
  } else {
    candidate = [](const std::string& expr, const countdown::CountdownProblem& problem) {
      return countdown::verify(expr, problem, 0.0).valid;
    };
  }

  ModeOutput out;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const bool agree = candidate(cases[i].expr, cases[i].problem) == cases[i].oracle_valid;
    hits += agree ? 1 : 0;
    TraceRow row;
    row.step = i + 1;
    row.reward_acc = agree ? 1.0 : 0.0;
    out.rows.push_back(row);
  }
  out.summary.emplace_back("candidate", spec.candidate);
  out.summary.emplace_back("cases", std::to_string(cases.size()));
  out.summary.emplace_back("reward_accuracy",
                           fmt(static_cast<double>(hits) / static_cast<double>(cases.size())));
  return out;
}

std::string render_plot(const std::vector<TraceRow>& rows,
                        const std::vector<std::string>& columns) {
  static const char* kColors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                  "#8172b3", "#937860", "#da8bc3", "#8c8c8c", "#ccb974"};
  const double width = 640, height = 400, margin = 48;

  double min_v = 0.0, max_v = 1.0;
  bool any = false;
  for (const auto& row : rows) {
    for (const auto& col : columns) {
      if (const auto v = column_value(row, col)) {
        if (!any) { min_v = max_v = *v; any = true; }
        min_v = std::min(min_v, *v);
        max_v = std::max(max_v, *v);
      }
    }
  }
  if (!any) throw std::runtime_error("plot: requested columns have no values");
  if (max_v == min_v) max_v = min_v + 1.0;
  const double max_step = static_cast<double>(rows.back().step);
  const double min_step = static_cast<double>(rows.front().step);
  const double span = std::max(1.0, max_step - min_step);

  auto x_of = [&](double step) {
    return margin + (step - min_step) / span * (width - 2 * margin);
  };
  auto y_of = [&](double v) {
    return height - margin - (v - min_v) / (max_v - min_v) * (height - 2 * margin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << margin << "\" y=\"" << height - margin + 16
      << "\" font-size=\"10\">" << fmt(min_step) << "</text>\n"
      << "<text x=\"" << width - margin - 20 << "\" y=\"" << height - margin + 16
      << "\" font-size=\"10\">" << fmt(max_step) << "</text>\n"
      << "<text x=\"4\" y=\"" << height - margin << "\" font-size=\"10\">" << fmt(min_v)
      << "</text>\n"
      << "<text x=\"4\" y=\"" << margin << "\" font-size=\"10\">" << fmt(max_v) << "</text>\n";

  for (std::size_t c = 0; c < columns.size(); ++c) {
    const char* color = kColors[c % (sizeof(kColors) / sizeof(kColors[0]))];
    std::ostringstream points;
    for (const auto& row : rows) {
      if (const auto v = column_value(row, columns[c])) {
        points << x_of(static_cast<double>(row.step)) << ',' << y_of(*v) << ' ';
      }
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << points.str() << "\"/>\n"
        << "<text x=\"" << width - margin + 4 << "\" y=\"" << margin + 14.0 * c
        << "\" font-size=\"10\" fill=\"" << color << "\">" << columns[c] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
  if (!os) throw std::runtime_error("cannot write file: " + path.string());
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  std::string out_dir = config.out_dir;
  if (const char* env = std::getenv("URLVR_LAB_OUT"); env && *env) out_dir = env;
  std::filesystem::create_directories(out_dir);

  ModeOutput output;
  std::string mode_name;
  switch (config.mode) {
    case ExperimentMode::dynamics: output = run_dynamics(config); mode_name = "dynamics"; break;
    case ExperimentMode::train: output = run_train(config); mode_name = "train"; break;
    case ExperimentMode::collapse: output = run_collapse(config); mode_name = "collapse"; break;
    case ExperimentMode::countdown: output = run_countdown(config); mode_name = "countdown"; break;
  }

  RunResult result;
  result.out_dir = out_dir;
  const std::filesystem::path dir(out_dir);

  result.trace_path = (dir / "trace.csv").string();
  write_file(dir / "trace.csv", trace_to_csv(output.rows));

  std::string summary = "mode=" + mode_name + "\n";
  summary += "seed=" + std::to_string(config.seed) + "\n";
  summary += "rng=" + std::string(kRngName) + "\n";
  for (const auto& [key, value] : output.summary) summary += key + "=" + value + "\n";
  result.summary_path = (dir / "summary.txt").string();
  write_file(dir / "summary.txt", summary);

  if (!config.plot_columns.empty()) {
    result.plot_path = (dir / "plot.svg").string();
    write_file(dir / "plot.svg", render_plot(output.rows, config.plot_columns));
  }
  return result;
}

RunResult run_experiment_file(const std::string& path) {
  return run_experiment(load_config(path));
}

}  // namespace urlvr
