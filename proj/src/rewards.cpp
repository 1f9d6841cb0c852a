#include "urlvr/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urlvr {

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::self_certainty: return "self-certainty";
    case EstimatorKind::token_entropy: return "token-entropy";
    case EstimatorKind::trajectory_entropy: return "trajectory-entropy";
    case EstimatorKind::probability: return "probability";
    case EstimatorKind::probability_disparity: return "probability-disparity";
    case EstimatorKind::empo: return "empo";
    case EstimatorKind::majority_voting: return "majority-voting";
    case EstimatorKind::ground_truth: return "ground-truth";
  }
  throw std::invalid_argument("unknown estimator kind");
}

EstimatorKind estimator_kind_from_string(const std::string& name) {
  if (name == "self-certainty") return EstimatorKind::self_certainty;
  if (name == "token-entropy") return EstimatorKind::token_entropy;
  if (name == "trajectory-entropy") return EstimatorKind::trajectory_entropy;
  if (name == "probability") return EstimatorKind::probability;
  if (name == "probability-disparity") return EstimatorKind::probability_disparity;
  if (name == "empo") return EstimatorKind::empo;
  if (name == "majority-voting") return EstimatorKind::majority_voting;
  if (name == "ground-truth") return EstimatorKind::ground_truth;
  throw std::invalid_argument("unknown estimator kind: " + name);
}

double self_certainty(const Trajectory& traj) {
  double total = 0.0;
  for (const auto& dist : traj.step_dists) {
    total += kl_divergence(ProbabilityVector::uniform(dist.size()), dist);
  }
  return total / static_cast<double>(traj.length());
}

double token_entropy_reward(const Trajectory& traj) {
  double total = 0.0;
  for (const auto& dist : traj.step_dists) total += entropy(dist);
  return -total / static_cast<double>(traj.length());
}

double trajectory_entropy_reward(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t t = 0; t < traj.length(); ++t) {
    total += floored_log(traj.realized_prob(t));
  }
  return total / static_cast<double>(traj.length());
}

double probability_reward(const Trajectory& traj) {
  double log_prob = 0.0;
  for (std::size_t t = 0; t < traj.length(); ++t) {
    log_prob += floored_log(traj.realized_prob(t));
  }
  return std::exp(log_prob);
}

double probability_disparity_reward(const Trajectory& traj, StepSpan answer_span) {
  if (answer_span.begin >= answer_span.end || answer_span.end > traj.length()) {
    throw std::invalid_argument("probability_disparity_reward: empty or out-of-range span");
  }
  double total = 0.0;
  for (std::size_t t = answer_span.begin; t < answer_span.end; ++t) {
    const auto& p = traj.step_dists[t].probs();
    if (p.size() < 2) {
      throw std::invalid_argument("probability_disparity_reward: single-outcome vocabulary");
    }
    double top1 = -1.0, top2 = -1.0;
    for (double v : p) {
      if (v > top1) {
        top2 = top1;
        top1 = v;
      } else if (v > top2) {
        top2 = v;
      }
    }
    total += top1 - top2;
  }
  return total / static_cast<double>(answer_span.end - answer_span.begin);
}

VotingOutcome majority_vote(const RolloutSet& rollouts) {
  if (rollouts.size() == 0) throw std::invalid_argument("majority_vote: empty rollout set");
  VotingOutcome out;
  for (const auto& traj : rollouts.rollouts) ++out.counts[traj.answer];
  // std::map iterates lexicographically, so the first strict maximum is the
  // lexicographically smallest answer among ties.
  std::size_t best = 0;
  for (const auto& [answer, count] : out.counts) {
    if (count > best) {
      best = count;
      out.majority_answer = answer;
    }
  }
  out.per_rollout_rewards.reserve(rollouts.size());
  for (const auto& traj : rollouts.rollouts) {
    out.per_rollout_rewards.push_back(traj.answer == out.majority_answer ? 1.0 : 0.0);
  }
  return out;
}

std::vector<double> empo_reward(const RolloutSet& rollouts) {
  if (rollouts.size() == 0) throw std::invalid_argument("empo_reward: empty rollout set");
  std::map<std::string, std::size_t> counts;
  for (const auto& traj : rollouts.rollouts) ++counts[traj.answer];
  const double g = static_cast<double>(rollouts.size());
  std::vector<double> rewards;
  rewards.reserve(rollouts.size());
  for (const auto& traj : rollouts.rollouts) {
    rewards.push_back(static_cast<double>(counts[traj.answer]) / g);
  }
  return rewards;
}

}  // namespace urlvr
