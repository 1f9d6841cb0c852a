#pragma once

// Intrinsic reward estimators: certainty-based scores computed from a single
// trajectory's step distributions, and ensemble-based scores computed from a
// set of rollouts. All are pure functions.

#include "urlvr/policy.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace urlvr {

enum class EstimatorKind {
  self_certainty,
  token_entropy,
  trajectory_entropy,
  probability,
  probability_disparity,
  empo,
  majority_voting,
  ground_truth,  // oracle reward; only meaningful where a ground truth exists
};

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string& name);

/// Result of majority voting over a rollout set.
struct VotingOutcome {
  std::string majority_answer;
  std::map<std::string, std::size_t> counts;
  std::vector<double> per_rollout_rewards;  // 1 iff rollout answer == majority
};

/// Mean over steps of KL(uniform || step distribution). Non-negative.
double self_certainty(const Trajectory& traj);

/// Negative mean Shannon entropy of the step distributions. <= 0.
double token_entropy_reward(const Trajectory& traj);

/// Mean log-probability of the realized tokens. <= 0 up to flooring.
double trajectory_entropy_reward(const Trajectory& traj);

/// Product of realized token probabilities, accumulated in log domain.
double probability_reward(const Trajectory& traj);

/// Half-open step range [begin, end) within a trajectory.
struct StepSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Mean over span steps of (top-1 probability - top-2 probability).
/// Requires a non-empty in-range span and >= 2 outcomes at each spanned step.
double probability_disparity_reward(const Trajectory& traj, StepSpan answer_span);

/// Counts by exact answer identity; lexicographically smallest answer wins
/// ties; binary per-rollout rewards.
VotingOutcome majority_vote(const RolloutSet& rollouts);

/// Per-rollout reward (size of the rollout's exact-answer cluster) / G.
std::vector<double> empo_reward(const RolloutSet& rollouts);

}  // namespace urlvr
