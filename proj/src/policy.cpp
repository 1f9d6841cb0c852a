#include "urlvr/policy.hpp"

#include "urlvr/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace urlvr {

namespace {

void validate_answer_id(const std::string& answer) {
  if (answer.empty()) throw std::invalid_argument("answer identifier is empty");
  for (unsigned char c : answer) {
    if (std::isspace(c) || !std::isprint(c)) {
      throw std::invalid_argument("answer identifier contains whitespace or control characters");
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Trajectory::Trajectory(std::vector<std::size_t> tokens_in,
                       std::vector<ProbabilityVector> step_dists_in,
                       std::string answer_in)
    : tokens(std::move(tokens_in)),
      step_dists(std::move(step_dists_in)),
      answer(std::move(answer_in)) {
  if (tokens.empty() || tokens.size() != step_dists.size()) {
    throw std::invalid_argument("Trajectory: tokens and step_dists must have equal length >= 1");
  }
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t] >= step_dists[t].size()) {
      throw std::invalid_argument("Trajectory: token index out of range for its step distribution");
    }
  }
  validate_answer_id(answer);
}

AnswerSpace::AnswerSpace(std::vector<std::string> answers_in,
                         std::optional<std::string> ground_truth_in)
    : answers(std::move(answers_in)), ground_truth(std::move(ground_truth_in)) {
  std::set<std::string> seen;
  for (const auto& a : answers) {
    validate_answer_id(a);
    if (!seen.insert(a).second) {
      throw std::invalid_argument("AnswerSpace: duplicate answer identifier");
    }
  }
  if (ground_truth && !seen.count(*ground_truth)) {
    throw std::invalid_argument("AnswerSpace: ground truth is not a member answer");
  }
}

bool AnswerSpace::contains(const std::string& answer) const {
  return std::find(answers.begin(), answers.end(), answer) != answers.end();
}

TabularPolicy::TabularPolicy(std::vector<double> logits, std::vector<Trajectory> trajectories)
    : logits_(std::move(logits)), trajectories_(std::move(trajectories)) {
  if (logits_.empty() || logits_.size() != trajectories_.size()) {
    throw std::invalid_argument("TabularPolicy: logits and trajectory table sizes differ or are empty");
  }
  bool any_finite = false;
  for (double l : logits_) {
    if (std::isnan(l)) throw std::invalid_argument("TabularPolicy: NaN logit");
    any_finite = any_finite || std::isfinite(l);
  }
  if (!any_finite) throw std::invalid_argument("TabularPolicy: no finite logit");

  std::set<std::string> answers;
  for (const auto& traj : trajectories_) answers.insert(traj.answer);
  answer_set_.assign(answers.begin(), answers.end());
}

TabularPolicy TabularPolicy::with_logits(std::vector<double> logits) const {
  return TabularPolicy(std::move(logits), trajectories_);
}

double answer_mass(const TabularPolicy& policy, const std::string& answer) {
  const auto& set = policy.answer_set();
  if (!std::binary_search(set.begin(), set.end(), answer)) {
    throw std::invalid_argument("answer_mass: unknown answer identifier: " + answer);
  }
  const auto probs = policy.probabilities();
  double mass = 0.0;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    if (policy.answer_of(i) == answer) mass += probs[i];
  }
  return mass;
}

std::vector<double> answer_masses(const TabularPolicy& policy) {
  const auto probs = policy.probabilities();
  const auto& set = policy.answer_set();
  std::vector<double> masses(set.size(), 0.0);
  for (std::size_t i = 0; i < policy.size(); ++i) {
    const auto it = std::lower_bound(set.begin(), set.end(), policy.answer_of(i));
    masses[static_cast<std::size_t>(it - set.begin())] += probs[i];
  }
  return masses;
}

std::string greedy_answer(const TabularPolicy& policy) {
  const auto masses = answer_masses(policy);
  const auto& set = policy.answer_set();
  std::size_t best = 0;
  for (std::size_t i = 1; i < masses.size(); ++i) {
    if (masses[i] > masses[best]) best = i;  // strict: lexicographically first wins ties
  }
  return set[best];
}

RolloutSet sample_rollouts(const TabularPolicy& policy, std::size_t n,
                           double temperature, std::uint64_t seed,
                           std::string source_policy_id) {
  if (n == 0) throw std::invalid_argument("sample_rollouts: N must be >= 1");
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("sample_rollouts: temperature must be positive");
  }
  std::vector<double> scaled(policy.size());
  for (std::size_t i = 0; i < policy.size(); ++i) scaled[i] = policy.logits()[i] / temperature;
  const auto probs = softmax(scaled);

  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  Rng rng(seed);
  RolloutSet out;
  out.source_policy_id = std::move(source_policy_id);
  out.sampling_temperature = temperature;
  out.rollouts.reserve(n);
  out.indices.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = rng.unit();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cdf.begin()), probs.size() - 1);
    out.rollouts.push_back(policy.trajectory(idx));
    out.indices.push_back(idx);
  }
  return out;
}

void write_space(std::ostream& os, const TabularPolicy& policy,
                 const std::optional<std::string>& ground_truth) {
  os << "space " << policy.size() << ' ' << policy.answer_set().size() << '\n';
  for (std::size_t i = 0; i < policy.size(); ++i) {
    const Trajectory& traj = policy.trajectory(i);
    os << i << ' ' << traj.answer << ' ' << format_double(policy.logits()[i]) << ' '
       << traj.length() << '\n';
    for (std::size_t t = 0; t < traj.length(); ++t) {
      os << traj.tokens[t] << ' ' << traj.step_dists[t].size();
      for (double p : traj.step_dists[t].probs()) os << ' ' << format_double(p);
      os << '\n';
    }
  }
  if (ground_truth) os << "truth " << *ground_truth << '\n';
}

std::string space_to_string(const TabularPolicy& policy,
                            const std::optional<std::string>& ground_truth) {
  std::ostringstream oss;
  write_space(oss, policy, ground_truth);
  return oss.str();
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::runtime_error("space format: " + what);
}

}  // namespace

std::optional<Problem> read_space(std::istream& is) {
  std::string keyword;
  if (!(is >> keyword)) return std::nullopt;
  if (keyword != "space") malformed("expected 'space' header, got '" + keyword + "'");

  std::size_t n_traj = 0, n_answers = 0;
  if (!(is >> n_traj >> n_answers) || n_traj == 0) malformed("bad header counts");

  std::vector<double> logits;
  std::vector<Trajectory> trajectories;
  logits.reserve(n_traj);
  trajectories.reserve(n_traj);

  for (std::size_t i = 0; i < n_traj; ++i) {
    std::size_t idx = 0, token_count = 0;
    std::string answer;
    double logit = 0.0;
    if (!(is >> idx >> answer >> logit >> token_count)) malformed("truncated trajectory line");
    if (idx != i) malformed("trajectory indices must be consecutive from 0");
    if (token_count == 0) malformed("trajectory with zero tokens");

    std::vector<std::size_t> tokens;
    std::vector<ProbabilityVector> dists;
    for (std::size_t t = 0; t < token_count; ++t) {
      std::size_t token = 0, support = 0;
      if (!(is >> token >> support) || support == 0) malformed("truncated step line");
      std::vector<double> p(support);
      for (auto& v : p) {
        if (!(is >> v)) malformed("truncated step probabilities");
      }
      tokens.push_back(token);
      dists.emplace_back(std::move(p));
    }
    logits.push_back(logit);
    trajectories.emplace_back(std::move(tokens), std::move(dists), std::move(answer));
  }

  TabularPolicy policy(std::move(logits), std::move(trajectories));
  if (policy.answer_set().size() != n_answers) malformed("answer count mismatch");

  // optional trailer
  std::optional<std::string> ground_truth;
  const auto pos = is.tellg();
  std::string trailer;
  if (is >> trailer) {
    if (trailer == "truth") {
      std::string truth;
      if (!(is >> truth)) malformed("truncated truth trailer");
      ground_truth = truth;
    } else {
      is.seekg(pos);          // next space block
      is.clear();
    }
  } else {
    is.clear(std::ios::eofbit);
  }

  AnswerSpace answer_space(policy.answer_set(), ground_truth);
  return Problem{std::move(policy), std::move(answer_space)};
}

std::vector<Problem> load_problems(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open problems file: " + path);
  std::vector<Problem> problems;
  while (auto p = read_space(is)) problems.push_back(std::move(*p));
  if (problems.empty()) throw std::runtime_error("no space blocks in file: " + path);
  return problems;
}

}  // namespace urlvr
