#pragma once

// Finite answer/trajectory spaces and tabular softmax policies: the substrate
// the reward estimators, the sharpening dynamics and the toy trainer operate
// on. Trajectory spaces are explicitly enumerated so that closed-form
// quantities (answer masses, KL, optimal policies) are computable exactly.
//
// All types are immutable values after construction; all operations are pure.

#include "urlvr/prob.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace urlvr {

/// A token sequence together with the per-step next-token distribution it was
/// drawn from and the answer it resolves to. Answer identifiers are opaque,
/// non-empty and whitespace-free (they appear as single fields in the
/// line-oriented space format).
struct Trajectory {
  std::vector<std::size_t> tokens;
  std::vector<ProbabilityVector> step_dists;
  std::string answer;

  Trajectory(std::vector<std::size_t> tokens_in,
             std::vector<ProbabilityVector> step_dists_in,
             std::string answer_in);

  std::size_t length() const noexcept { return tokens.size(); }

  /// Probability the step distribution assigned to the realized token.
  double realized_prob(std::size_t step) const { return step_dists[step][tokens[step]]; }
};

/// Ordered set of distinct answer identifiers, with an optional ground truth.
struct AnswerSpace {
  std::vector<std::string> answers;
  std::optional<std::string> ground_truth;

  AnswerSpace(std::vector<std::string> answers_in,
              std::optional<std::string> ground_truth_in = std::nullopt);

  bool contains(const std::string& answer) const;
};

/// Softmax-parameterized distribution over an enumerated trajectory table.
/// Logits may be -infinity (exact zero probability) but at least one must be
/// finite and none may be NaN.
class TabularPolicy {
 public:
  TabularPolicy(std::vector<double> logits, std::vector<Trajectory> trajectories);

  std::size_t size() const noexcept { return logits_.size(); }
  const std::vector<double>& logits() const noexcept { return logits_; }
  const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }
  const Trajectory& trajectory(std::size_t i) const { return trajectories_[i]; }
  const std::string& answer_of(std::size_t i) const { return trajectories_[i].answer; }

  /// softmax(logits) over the trajectory table.
  std::vector<double> probabilities() const { return softmax(logits_); }

  /// Distinct answers, lexicographically sorted.
  const std::vector<std::string>& answer_set() const noexcept { return answer_set_; }

  /// Same trajectory table, new logits.
  TabularPolicy with_logits(std::vector<double> logits) const;

 private:
  std::vector<double> logits_;
  std::vector<Trajectory> trajectories_;
  std::vector<std::string> answer_set_;
};

/// N trajectories sampled from one policy at one temperature. `indices`
/// caches each rollout's position in the source trajectory table; rollout
/// sets built by hand may leave it empty.
struct RolloutSet {
  std::vector<Trajectory> rollouts;
  std::string source_policy_id;
  double sampling_temperature = 1.0;
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return rollouts.size(); }
};

/// Total probability mass on trajectories whose answer equals `answer`.
/// Throws if the answer is not in the policy's answer set.
double answer_mass(const TabularPolicy& policy, const std::string& answer);

/// Masses for every answer in answer_set() order. Sums to 1.
std::vector<double> answer_masses(const TabularPolicy& policy);

/// Answer with maximal mass; lexicographically smallest identifier wins ties.
std::string greedy_answer(const TabularPolicy& policy);

/// N independent draws from the temperature-T softmax over trajectories.
/// Deterministic given the seed (inverse-CDF over mt19937_64).
RolloutSet sample_rollouts(const TabularPolicy& policy, std::size_t n,
                           double temperature, std::uint64_t seed,
                           std::string source_policy_id = "policy");

// ---------------------------------------------------------------------------
// Line-oriented space serialization. Bit-exact round-trip: doubles are
// written with 17 significant digits.
//
//   space <n_traj> <n_answers>
//   <idx> <answer> <logit> <token_count>          (one per trajectory)
//   <token> <support> <p0> ... <p_{support-1}>    (token_count lines each)
//   truth <answer>                                (optional trailer)
// ---------------------------------------------------------------------------

struct Problem {
  TabularPolicy policy;
  AnswerSpace answer_space;
};

void write_space(std::ostream& os, const TabularPolicy& policy,
                 const std::optional<std::string>& ground_truth = std::nullopt);
std::string space_to_string(const TabularPolicy& policy,
                            const std::optional<std::string>& ground_truth = std::nullopt);

/// Reads one space block. Throws std::runtime_error on malformed input;
/// returns nullopt at end of stream.
std::optional<Problem> read_space(std::istream& is);

/// Reads all space blocks from a file.
std::vector<Problem> load_problems(const std::string& path);

}  // namespace urlvr
