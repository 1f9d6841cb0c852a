#pragma once

// Stochastic policy-gradient training over tabular softmax policies:
// sample rollouts, score them with an intrinsic (or oracle) reward, take
// REINFORCE steps with an optional group-mean baseline and KL-to-reference
// penalty. Mini-batching below the global batch is realized as repeated
// updates against the rewards frozen at the sampling phase, which is what
// makes off-policy staleness reproducible in this setting.

#include "urlvr/policy.hpp"
#include "urlvr/rewards.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urlvr {

struct TrainConfig {
  EstimatorKind reward_kind = EstimatorKind::majority_voting;
  std::size_t n_rollouts = 8;
  std::size_t global_batch = 1;  // problems per optimization step
  std::size_t mini_batch = 1;    // must divide global_batch
  double learning_rate = 0.1;
  double kl_coef = 0.0;          // beta-like penalty toward the reference
  double temperature = 1.0;
  std::size_t steps = 1;
  std::uint64_t seed = 0;

  enum class Baseline { group_mean, none };
  Baseline baseline = Baseline::group_mean;

  void validate() const;
  std::size_t updates_per_phase() const { return global_batch / mini_batch; }
};

struct TrainStepRecord {
  std::size_t step = 0;                // 1-based
  std::vector<double> p_maj;           // per problem in this step's batch
  std::vector<std::string> majorities;
  std::vector<std::string> greedy;     // post-update greedy answer per problem
  double mean_reward = 0.0;
  std::optional<double> gt_reward;
  std::optional<double> reward_accuracy;
  std::optional<double> label_accuracy;
  double actor_entropy = 0.0;
  double kl_drift = 0.0;
  std::optional<double> eta_hat;       // realized step efficiency
  std::size_t majority_flips = 0;
};

struct TrainTrace {
  std::vector<TrainStepRecord> steps;
  std::vector<TabularPolicy> final_policies;
  std::size_t total_flips = 0;
};

/// Surrogate the gradient ascends: (1/N) sum_j A_j log pi(y_j)
/// - kl_coef * KL(pi || ref), with A_j the (optionally group-mean-centered)
/// rewards. Deterministic in the policy for fixed rollouts and rewards.
double surrogate_objective(const TabularPolicy& policy, const std::vector<std::size_t>& indices,
                           const std::vector<double>& rewards, const TrainConfig& config,
                           const TabularPolicy& ref);

/// Analytic gradient of surrogate_objective with respect to the logits.
std::vector<double> policy_gradient(const TabularPolicy& policy,
                                    const std::vector<std::size_t>& indices,
                                    const std::vector<double>& rewards, const TrainConfig& config,
                                    const TabularPolicy& ref);

/// One ascent step on the Monte-Carlo policy gradient. Rollouts must carry
/// table indices (sample_rollouts fills them; hand-built sets are resolved
/// by matching trajectories against the table).
TabularPolicy gradient_step(const TabularPolicy& policy, const RolloutSet& rollouts,
                            const std::vector<double>& rewards, const TrainConfig& config,
                            const TabularPolicy& ref);

/// Per-rollout rewards for the configured estimator. The answer space
/// supplies the ground truth where the kind requires one.
std::vector<double> rollout_rewards(EstimatorKind kind, const RolloutSet& rollouts,
                                    const AnswerSpace& answer_space);

/// The full training loop over independent problems. Deterministic given
/// config.seed.
TrainTrace train(const TrainConfig& config, const std::vector<Problem>& problems);

/// Repeated ascent steps against a frozen per-trajectory reward vector,
/// starting from (and regularized toward) `policy`. The gradient is the
/// exact expectation over the enumerated space, so with kl_coef > 0 the
/// iterates converge to optimal_policy(policy, rewards, kl_coef).
TabularPolicy fixed_reward_replay(const TabularPolicy& policy, const std::vector<double>& rewards,
                                  std::size_t updates, const TrainConfig& config);

}  // namespace urlvr
