#pragma once

// Training-dynamics metrics: label/reward accuracy, mean oracle and pseudo
// rewards, certainty-ranked accuracy, KL drift from a reference policy, the
// Model Collapse Step detector, and the cost-accounting arithmetic.

#include "urlvr/policy.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urlvr {

/// One prompt's rollout outcomes within a batch.
struct PromptRecord {
  std::string ground_truth;
  std::vector<std::string> answers;       // one per rollout
  std::vector<double> pseudo_rewards;     // binary or real
  std::vector<double> oracle_rewards;     // binary
  std::optional<std::vector<double>> certainty;
};

/// Rectangular batch: every prompt carries the same number of rollouts,
/// and oracle rewards are binary.
struct BatchRecord {
  std::vector<PromptRecord> prompts;

  explicit BatchRecord(std::vector<PromptRecord> prompts_in);
  std::size_t rollouts_per_prompt() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
};

/// Fraction of prompts whose majority-voted answer matches ground truth.
/// Majority ties break lexicographically, as everywhere else.
double label_accuracy(const BatchRecord& batch);

/// Fraction of (prompt, rollout) pairs where the binary pseudo-reward equals
/// the oracle reward. Throws if any pseudo-reward is not exactly 0 or 1.
double reward_accuracy(const BatchRecord& batch);

/// Mean oracle reward over all rollouts.
double gt_reward(const BatchRecord& batch);

/// Mean pseudo-reward over all rollouts.
double mv_reward(const BatchRecord& batch);

/// Fraction of prompts whose highest-certainty rollout is correct.
/// Certainty argmax ties break toward the lowest rollout index.
double certainty_label_accuracy(const BatchRecord& batch);

/// 1-based index of the first trace value strictly below the threshold;
/// nullopt if the trace never crosses. The boundary value itself does not
/// trigger.
std::optional<std::size_t> model_collapse_step(const std::vector<double>& accuracy_trace,
                                               double threshold = 0.01);

/// KL(policy || ref) over the shared enumerated trajectory space.
double kl_drift(const TabularPolicy& policy, const TabularPolicy& ref);

/// Mean KL drift over per-problem (policy, ref) pairs.
double kl_drift(const std::vector<std::pair<TabularPolicy, TabularPolicy>>& problems);

struct BaselineCost {
  std::uint64_t response_len;
  std::uint64_t rollouts;
  std::uint64_t dataset_size;
  std::uint64_t models;
};

struct CostReport {
  double indicator_tokens;  // response * rollouts * sum(collapse steps) * batch
  double baseline_tokens;   // response * rollouts * dataset * models
  double speedup;           // baseline / indicator
};

CostReport cost_report(const std::vector<std::uint64_t>& collapse_steps, std::uint64_t batch,
                       std::uint64_t rollouts, std::uint64_t response_len,
                       const BaselineCost& baseline);

}  // namespace urlvr
