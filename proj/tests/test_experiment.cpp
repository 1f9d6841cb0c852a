#include "urlvr/experiment.hpp"

#include "urlvr/countdown.hpp"

#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace urlvr;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return buffer.str();
}

std::map<std::string, std::string> read_summary(const fs::path& path) {
  std::map<std::string, std::string> out;
  std::istringstream is(read_file(path));
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("urlvr_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("dynamics block") {
    const auto config = parse_config(
        "mode=dynamics\nseed=9\nout_dir=d\n"
        "dynamics.p0=0.2\ndynamics.beta=0.5\ndynamics.eta=0.3,0.9\ndynamics.steps=12\n");
    CHECK(config.mode == ExperimentMode::dynamics);
    CHECK(config.seed == 9);
    CHECK(config.dynamics.p0 == 0.2);
    CHECK(config.dynamics.eta == std::vector<double>{0.3, 0.9});
    CHECK(config.dynamics.steps == 12);
  }
  SUBCASE("comments and blank lines") {
    const auto config = parse_config("# a comment\n\nmode=dynamics\n  dynamics.steps = 3 \n");
    CHECK(config.dynamics.steps == 3);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);                          // no mode
    CHECK_THROWS_AS(parse_config("mode=warp\n"), ConfigError);               // bad mode
    CHECK_THROWS_AS(parse_config("mode=dynamics\nbogus=1\n"), ConfigError);  // unknown key
    CHECK_THROWS_AS(parse_config("mode=dynamics\ntrain.lr=0.1\n"), ConfigError);  // wrong block
    CHECK_THROWS_AS(parse_config("mode=dynamics\ndynamics.beta=fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode=dynamics\nmode=dynamics\n"), ConfigError);  // duplicate
    CHECK_THROWS_AS(parse_config("mode=collapse\n"), ConfigError);  // missing trace file
    CHECK_THROWS_AS(parse_config("mode=train\n"), ConfigError);     // no problem source
    CHECK_THROWS_AS(parse_config("mode=dynamics\nplot=nope\n"), ConfigError);
  }
}

TEST_CASE("trace_to_csv") {
  TraceRow row;
  row.step = 1;
  row.p_maj = 0.5;
  row.epsilon = 0.5;
  const auto csv = trace_to_csv({row});
  CHECK(csv ==
        "step,p_maj,epsilon,mv_reward,gt_reward,reward_acc,label_acc,actor_entropy,kl_drift,"
        "eta_hat\n1,0.5,0.5,,,,,,,\n");
  CHECK_THROWS_AS(trace_to_csv({}), std::runtime_error);
}

TEST_CASE("dynamics run end to end") {
  TempDir dir;
  ExperimentConfig config;
  config.mode = ExperimentMode::dynamics;
  config.out_dir = (dir.path / "out").string();
  config.dynamics = DynamicsSpec{0.1, 1.0, {1.0}, 50};
  config.plot_columns = {"p_maj", "epsilon"};

  const auto result = run_experiment(config);
  const auto csv = read_file(result.trace_path);

  // header + 50 rows, LF endings
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
  CHECK(csv.find('\r') == std::string::npos);

  const auto summary = read_summary(result.summary_path);
  CHECK(std::stod(summary.at("final_p_maj")) >= 0.999);
  CHECK(summary.at("rng") == "mt19937_64");

  REQUIRE(result.plot_path.has_value());
  const auto svg = read_file(*result.plot_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  SUBCASE("re-running is byte-identical") {
    const auto again = run_experiment(config);
    CHECK(read_file(again.trace_path) == csv);
    CHECK(read_file(*again.plot_path) == svg);
  }
}

TEST_CASE("train run end to end populates every column") {
  TempDir dir;
  const std::string config_text =
      "mode=train\n"
      "seed=5\n"
      "out_dir=" + (dir.path / "out").string() + "\n"
      "train.reward=majority-voting\n"
      "train.rollouts=16\n"
      "train.gen_problems=3\n"
      "train.gen_trajectories=6\n"
      "train.gen_answers=3\n"
      "train.lr=0.2\n"
      "train.steps=8\n";
  const auto result = run_experiment(parse_config(config_text));
  const auto csv = read_file(result.trace_path);

  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == kTraceHeader);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    // no empty cells in a train trace with ground truths
    CHECK(line.find(",,") == std::string::npos);
    CHECK(line.back() != ',');
  }
  CHECK(rows == 8);

  const auto summary = read_summary(result.summary_path);
  CHECK(summary.count("final_label_acc"));
  CHECK(summary.count("total_majority_flips"));
}

TEST_CASE("train run from a problems file") {
  TempDir dir;
  const auto problems = generate_problems(2, 5, 2, 123);
  std::ofstream os(dir.path / "problems.txt");
  for (const auto& p : problems) write_space(os, p.policy, p.answer_space.ground_truth);
  os.close();

  const std::string config_text =
      "mode=train\nseed=1\nout_dir=" + (dir.path / "out").string() +
      "\ntrain.problems_file=" + (dir.path / "problems.txt").string() +
      "\ntrain.rollouts=8\ntrain.steps=4\ntrain.lr=0.1\n";
  const auto result = run_experiment(parse_config(config_text));
  const auto summary = read_summary(result.summary_path);
  CHECK(summary.at("problems") == "2");
  CHECK(summary.at("steps") == "4");
}

TEST_CASE("collapse run on a bare series and on a unified trace") {
  TempDir dir;
  SUBCASE("bare series") {
    std::ofstream os(dir.path / "series.txt");
    os << "0.8\n0.5\n0.02\n0.009\n0.0\n";
    os.close();
    ExperimentConfig config;
    config.mode = ExperimentMode::collapse;
    config.out_dir = (dir.path / "out").string();
    config.collapse.trace_file = (dir.path / "series.txt").string();
    const auto result = run_experiment(config);
    CHECK(read_summary(result.summary_path).at("collapse_step") == "4");
  }
  SUBCASE("unified trace column") {
    std::vector<TraceRow> rows;
    for (std::size_t k = 0; k < 5; ++k) {
      TraceRow row;
      row.step = k + 1;
      row.reward_acc = k < 2 ? 0.5 : 0.001;
      rows.push_back(row);
    }
    std::ofstream os(dir.path / "trace.csv", std::ios::binary);
    os << trace_to_csv(rows);
    os.close();
    ExperimentConfig config;
    config.mode = ExperimentMode::collapse;
    config.out_dir = (dir.path / "out").string();
    config.collapse.trace_file = (dir.path / "trace.csv").string();
    const auto result = run_experiment(config);
    CHECK(read_summary(result.summary_path).at("collapse_step") == "3");
  }
  SUBCASE("never crossing reports none") {
    std::ofstream os(dir.path / "series.txt");
    os << "0.5\n0.01\n";
    os.close();
    ExperimentConfig config;
    config.mode = ExperimentMode::collapse;
    config.out_dir = (dir.path / "out").string();
    config.collapse.trace_file = (dir.path / "series.txt").string();
    const auto result = run_experiment(config);
    CHECK(read_summary(result.summary_path).at("collapse_step") == "none");
  }
}

TEST_CASE("countdown run against a labeled case file") {
  TempDir dir;
  std::vector<countdown::LabeledCase> cases;
  cases.push_back({"1+2*3", countdown::CountdownProblem({1, 2, 3}, 7), true});
  cases.push_back({"1+2+3", countdown::CountdownProblem({1, 2, 3}, 7), false});
  cases.push_back({"29/7*7", countdown::CountdownProblem({29, 7, 7}, 29), true});
  countdown::save_cases((dir.path / "cases.jsonl").string(), cases);

  ExperimentConfig config;
  config.mode = ExperimentMode::countdown;
  config.out_dir = (dir.path / "out").string();
  config.countdown.cases_file = (dir.path / "cases.jsonl").string();

  SUBCASE("oracle candidate scores 1") {
    const auto result = run_experiment(config);
    CHECK(read_summary(result.summary_path).at("reward_accuracy") == "1");
  }
  SUBCASE("zero-tolerance candidate misses the rounding case") {
    config.countdown.candidate = "zero-tolerance";
    const auto result = run_experiment(config);
    CHECK(std::stod(read_summary(result.summary_path).at("reward_accuracy")) ==
          doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("constant-true candidate scores the valid fraction") {
    config.countdown.candidate = "constant-true";
    const auto result = run_experiment(config);
    CHECK(std::stod(read_summary(result.summary_path).at("reward_accuracy")) ==
          doctest::Approx(2.0 / 3.0));
  }
}

TEST_CASE("URLVR_LAB_OUT overrides the configured output directory") {
  TempDir dir;
  ExperimentConfig config;
  config.mode = ExperimentMode::dynamics;
  config.out_dir = (dir.path / "ignored").string();
  config.dynamics.steps = 3;

  const auto override_dir = (dir.path / "override").string();
  ::setenv("URLVR_LAB_OUT", override_dir.c_str(), 1);
  const auto result = run_experiment(config);
  ::unsetenv("URLVR_LAB_OUT");

  CHECK(result.out_dir == override_dir);
  CHECK(fs::exists(fs::path(override_dir) / "trace.csv"));
  CHECK(!fs::exists(dir.path / "ignored"));
}

TEST_CASE("generated problems respect the answer-mass gap") {
  const auto problems = generate_problems(8, 8, 3, 2025, 0.3);
  CHECK(problems.size() == 8);
  for (const auto& p : problems) {
    auto masses = answer_masses(p.policy);
    std::sort(masses.begin(), masses.end(), std::greater<>());
    CHECK(masses[0] - masses[1] >= 0.3);
    REQUIRE(p.answer_space.ground_truth.has_value());
    CHECK(p.answer_space.contains(*p.answer_space.ground_truth));
  }
  // same seed, same problems
  const auto again = generate_problems(8, 8, 3, 2025, 0.3);
  for (std::size_t i = 0; i < problems.size(); ++i) {
    CHECK(problems[i].policy.logits() == again[i].policy.logits());
  }
}
