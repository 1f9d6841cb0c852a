#include "urlvr/trainer.hpp"

#include "urlvr/dynamics.hpp"
#include "urlvr/metrics.hpp"
#include "urlvr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace urlvr {

void TrainConfig::validate() const {
  if (n_rollouts == 0 || global_batch == 0 || mini_batch == 0 || steps == 0) {
    throw std::invalid_argument("TrainConfig: counts must be positive");
  }
  if (global_batch % mini_batch != 0) {
    throw std::invalid_argument("TrainConfig: mini_batch must divide global_batch");
  }
  if (!(learning_rate >= 0.0)) {  // zero is allowed: the trace is then constant
    throw std::invalid_argument("TrainConfig: learning_rate must be non-negative");
  }
  if (kl_coef < 0.0) throw std::invalid_argument("TrainConfig: kl_coef must be non-negative");
  if (!(temperature > 0.0)) throw std::invalid_argument("TrainConfig: temperature must be positive");
}

namespace {

std::vector<double> advantages(const std::vector<double>& rewards, TrainConfig::Baseline baseline) {
  if (baseline == TrainConfig::Baseline::none) return rewards;
  const bool all_equal =
      std::all_of(rewards.begin(), rewards.end(), [&](double r) { return r == rewards.front(); });
  if (all_equal) return std::vector<double>(rewards.size(), 0.0);
  const double mean =
      std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(rewards.size());
  std::vector<double> adv(rewards.size());
  for (std::size_t j = 0; j < rewards.size(); ++j) adv[j] = rewards[j] - mean;
  return adv;
}

// KL(pi || ref) and its logit gradient, with floored logs so that exact-zero
// probabilities contribute exactly zero.
double kl_value(const std::vector<double>& pi, const std::vector<double>& ref) {
  double kl = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] > 0.0) kl += pi[i] * (floored_log(pi[i]) - floored_log(ref[i]));
  }
  return kl;
}

std::vector<std::size_t> resolve_indices(const TabularPolicy& policy, const RolloutSet& rollouts) {
  if (!rollouts.indices.empty()) {
    if (rollouts.indices.size() != rollouts.size()) {
      throw std::invalid_argument("gradient_step: rollout indices not aligned with rollouts");
    }
    return rollouts.indices;
  }
  std::vector<std::size_t> indices;
  indices.reserve(rollouts.size());
  for (const auto& traj : rollouts.rollouts) {
    bool found = false;
    for (std::size_t i = 0; i < policy.size(); ++i) {
      const Trajectory& cand = policy.trajectory(i);
      if (cand.answer == traj.answer && cand.tokens == traj.tokens) {
        indices.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("gradient_step: rollout not found in trajectory table");
  }
  return indices;
}

}  // namespace

double surrogate_objective(const TabularPolicy& policy, const std::vector<std::size_t>& indices,
                           const std::vector<double>& rewards, const TrainConfig& config,
                           const TabularPolicy& ref) {
  if (indices.size() != rewards.size() || indices.empty()) {
    throw std::invalid_argument("surrogate_objective: indices/rewards length mismatch");
  }
  const auto pi = policy.probabilities();
  const auto adv = advantages(rewards, config.baseline);
  double value = 0.0;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    value += adv[j] * floored_log(pi[indices[j]]);
  }
  value /= static_cast<double>(indices.size());
  if (config.kl_coef > 0.0) value -= config.kl_coef * kl_value(pi, ref.probabilities());
  return value;
}

std::vector<double> policy_gradient(const TabularPolicy& policy,
                                    const std::vector<std::size_t>& indices,
                                    const std::vector<double>& rewards, const TrainConfig& config,
                                    const TabularPolicy& ref) {
  if (indices.size() != rewards.size() || indices.empty()) {
    throw std::invalid_argument("policy_gradient: indices/rewards length mismatch");
  }
  const auto pi = policy.probabilities();
  const auto adv = advantages(rewards, config.baseline);
  const double n = static_cast<double>(indices.size());

  // d/dlogit_i of (1/N) sum_j A_j log pi(y_j)  =  (1/N) (c_i - sum_j A_j pi_i)
  // with c_i the advantage mass landing on trajectory i.
  std::vector<double> grad(policy.size(), 0.0);
  double adv_sum = 0.0;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    grad[indices[j]] += adv[j];
    adv_sum += adv[j];
  }
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = (grad[i] - adv_sum * pi[i]) / n;
  }

  if (config.kl_coef > 0.0) {
    const auto ref_pi = ref.probabilities();
    const double kl = kl_value(pi, ref_pi);
    for (std::size_t i = 0; i < grad.size(); ++i) {
      if (pi[i] > 0.0) {
        grad[i] -= config.kl_coef * pi[i] * (floored_log(pi[i]) - floored_log(ref_pi[i]) - kl);
      }
    }
  }
  return grad;
}

TabularPolicy gradient_step(const TabularPolicy& policy, const RolloutSet& rollouts,
                            const std::vector<double>& rewards, const TrainConfig& config,
                            const TabularPolicy& ref) {
  if (rewards.size() != rollouts.size()) {
    throw std::invalid_argument("gradient_step: rewards not aligned with rollouts");
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("gradient_step: non-finite reward");
  }
  const auto indices = resolve_indices(policy, rollouts);
  const auto grad = policy_gradient(policy, indices, rewards, config, ref);

  std::vector<double> logits = policy.logits();
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (std::isnan(grad[i]) || std::isinf(grad[i])) {
      throw std::runtime_error("gradient_step: non-finite gradient");
    }
    logits[i] += config.learning_rate * grad[i];
  }
  return policy.with_logits(std::move(logits));
}

std::vector<double> rollout_rewards(EstimatorKind kind, const RolloutSet& rollouts,
                                    const AnswerSpace& answer_space) {
  std::vector<double> rewards;
  rewards.reserve(rollouts.size());
  switch (kind) {
    case EstimatorKind::majority_voting:
      return majority_vote(rollouts).per_rollout_rewards;
    case EstimatorKind::empo:
      return empo_reward(rollouts);
    case EstimatorKind::ground_truth: {
      if (!answer_space.ground_truth) {
        throw std::invalid_argument("rollout_rewards: ground-truth reward without a ground truth");
      }
      for (const auto& traj : rollouts.rollouts) {
        rewards.push_back(traj.answer == *answer_space.ground_truth ? 1.0 : 0.0);
      }
      return rewards;
    }
    case EstimatorKind::self_certainty:
      for (const auto& traj : rollouts.rollouts) rewards.push_back(self_certainty(traj));
      return rewards;
    case EstimatorKind::token_entropy:
      for (const auto& traj : rollouts.rollouts) rewards.push_back(token_entropy_reward(traj));
      return rewards;
    case EstimatorKind::trajectory_entropy:
      for (const auto& traj : rollouts.rollouts) rewards.push_back(trajectory_entropy_reward(traj));
      return rewards;
    case EstimatorKind::probability:
      for (const auto& traj : rollouts.rollouts) rewards.push_back(probability_reward(traj));
      return rewards;
    case EstimatorKind::probability_disparity:
      for (const auto& traj : rollouts.rollouts) {
        rewards.push_back(probability_disparity_reward(traj, StepSpan{0, traj.length()}));
      }
      return rewards;
  }
  throw std::invalid_argument("rollout_rewards: unknown estimator kind");
}

TrainTrace train(const TrainConfig& config, const std::vector<Problem>& problems) {
  config.validate();
  if (problems.empty()) throw std::invalid_argument("train: no problems");

  std::vector<TabularPolicy> policies;
  std::vector<TabularPolicy> refs;
  for (const auto& p : problems) {
    policies.push_back(p.policy);
    refs.push_back(p.policy);
  }
  std::vector<std::optional<std::string>> last_majority(problems.size());

  TrainTrace trace;
  trace.steps.reserve(config.steps);

  for (std::size_t step = 0; step < config.steps; ++step) {
    TrainStepRecord record;
    record.step = step + 1;

    double reward_sum = 0.0, gt_sum = 0.0, racc_sum = 0.0, label_sum = 0.0;
    double entropy_sum = 0.0, kl_sum = 0.0, eta_sum = 0.0;
    std::size_t reward_count = 0, gt_count = 0, racc_count = 0, label_count = 0, eta_count = 0;

    for (std::size_t b = 0; b < config.global_batch; ++b) {
      const std::size_t p = (step * config.global_batch + b) % problems.size();
      const AnswerSpace& space = problems[p].answer_space;

      const auto rollouts =
          sample_rollouts(policies[p], config.n_rollouts, config.temperature,
                          mix_seed(config.seed, step, b));
      for (const auto& traj : rollouts.rollouts) {
        if (!space.contains(traj.answer)) {
          throw std::runtime_error("train: rollout answer outside the problem's answer space");
        }
      }
      const auto rewards = rollout_rewards(config.reward_kind, rollouts, space);
      const auto outcome = majority_vote(rollouts);

      const double p_before = answer_mass(policies[p], outcome.majority_answer);

      // Rewards stay frozen across the inner updates; mini_batch < global_batch
      // therefore replays stale rewards against a moving policy.
      for (std::size_t u = 0; u < config.updates_per_phase(); ++u) {
        policies[p] = gradient_step(policies[p], rollouts, rewards, config, refs[p]);
      }

      const double p_after = answer_mass(policies[p], outcome.majority_answer);
      record.p_maj.push_back(p_after);
      record.majorities.push_back(outcome.majority_answer);
      record.greedy.push_back(greedy_answer(policies[p]));

      if (last_majority[p] && *last_majority[p] != outcome.majority_answer) {
        ++record.majority_flips;
      }
      last_majority[p] = outcome.majority_answer;

      reward_sum += std::accumulate(rewards.begin(), rewards.end(), 0.0) /
                    static_cast<double>(rewards.size());
      ++reward_count;

      if (space.ground_truth) {
        double gt = 0.0;
        for (const auto& traj : rollouts.rollouts) {
          gt += traj.answer == *space.ground_truth ? 1.0 : 0.0;
        }
        gt_sum += gt / static_cast<double>(rollouts.size());
        ++gt_count;
        label_sum += outcome.majority_answer == *space.ground_truth ? 1.0 : 0.0;
        ++label_count;

        const bool binary_pseudo = config.reward_kind == EstimatorKind::majority_voting ||
                                   config.reward_kind == EstimatorKind::ground_truth;
        if (binary_pseudo) {
          double agree = 0.0;
          for (std::size_t j = 0; j < rollouts.size(); ++j) {
            const double oracle =
                rollouts.rollouts[j].answer == *space.ground_truth ? 1.0 : 0.0;
            agree += rewards[j] == oracle ? 1.0 : 0.0;
          }
          racc_sum += agree / static_cast<double>(rollouts.size());
          ++racc_count;
        }
      }

      entropy_sum += entropy(ProbabilityVector(policies[p].probabilities()));
      kl_sum += kl_drift(policies[p], refs[p]);

      const double p_star = config.kl_coef > 0.0 ? p_maj_star(p_before, config.kl_coef) : 1.0;
      if (p_before > 0.0 && p_before < 1.0 && p_star - p_before > 1e-12) {
        eta_sum += (p_after - p_before) / (p_star - p_before);
        ++eta_count;
      }
    }

    record.mean_reward = reward_sum / static_cast<double>(reward_count);
    if (gt_count > 0) record.gt_reward = gt_sum / static_cast<double>(gt_count);
    if (racc_count > 0) record.reward_accuracy = racc_sum / static_cast<double>(racc_count);
    if (label_count > 0) record.label_accuracy = label_sum / static_cast<double>(label_count);
    record.actor_entropy = entropy_sum / static_cast<double>(reward_count);
    record.kl_drift = kl_sum / static_cast<double>(reward_count);
    if (eta_count > 0) record.eta_hat = eta_sum / static_cast<double>(eta_count);

    trace.total_flips += record.majority_flips;
    trace.steps.push_back(std::move(record));
  }

  trace.final_policies = std::move(policies);
  return trace;
}

TabularPolicy fixed_reward_replay(const TabularPolicy& policy, const std::vector<double>& rewards,
                                  std::size_t updates, const TrainConfig& config) {
  if (updates == 0) throw std::invalid_argument("fixed_reward_replay: need at least one update");
  if (rewards.size() != policy.size()) {
    throw std::invalid_argument("fixed_reward_replay: rewards not aligned with trajectory table");
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("fixed_reward_replay: non-finite reward");
  }

  const TabularPolicy ref = policy;
  const auto ref_pi = ref.probabilities();
  std::vector<double> logits = policy.logits();

  for (std::size_t u = 0; u < updates; ++u) {
    const auto pi = softmax(logits);
    double expected = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) expected += pi[i] * rewards[i];
    const double kl = config.kl_coef > 0.0 ? kl_value(pi, ref_pi) : 0.0;

    for (std::size_t i = 0; i < logits.size(); ++i) {
      // Exact gradient of E_pi[r] - kl_coef KL(pi||ref) in logit space.
      double g = pi[i] * (rewards[i] - expected);
      if (config.kl_coef > 0.0 && pi[i] > 0.0) {
        g -= config.kl_coef * pi[i] * (floored_log(pi[i]) - floored_log(ref_pi[i]) - kl);
      }
      if (std::isnan(g) || std::isinf(g)) {
        throw std::runtime_error("fixed_reward_replay: non-finite gradient");
      }
      logits[i] += config.learning_rate * g;
    }
  }
  return policy.with_logits(std::move(logits));
}

}  // namespace urlvr
