#pragma once

// The unified intrinsic-reward framework: every in-scope estimator is a
// monotone transform of a signed mean cross-entropy between an anchor
// distribution and a model distribution, evaluated at token or answer
// granularity. `instantiate` produces the configuration that reproduces
// each direct estimator; the equivalence is machine-checked in the tests.

#include "urlvr/policy.hpp"
#include "urlvr/rewards.hpp"

#include <optional>
#include <string>
#include <vector>

namespace urlvr {

enum class Granularity { token_level, answer_level };

enum class AnchorKind {
  uniform,           // U over the step vocabulary
  one_hot_realized,  // delta on the realized token
  one_hot_answer,    // delta on the rollout's answer
  tempered_answer,   // softmax(answer mass / tau), delta-anchored
  self_model,        // q = the model distribution itself (token entropy)
};

enum class TransformKind { identity, affine, exp_scaled };

struct RewardConfig {
  Granularity granularity = Granularity::token_level;
  AnchorKind anchor = AnchorKind::one_hot_realized;
  double tau = 1.0;    // tempered_answer only
  int sign = -1;       // sigma in {+1, -1}
  TransformKind transform = TransformKind::identity;
  double affine_shift = 0.0;
  bool affine_shift_is_neg_log_vocab = false;  // shift = -mean_t log |V_t|
  bool exp_scale_by_count = false;             // psi(z) = exp(|I| z) instead of exp(z)

  std::string describe() const;
};

/// Anchor/model distribution pair over a common support.
struct AnchoredPair {
  ProbabilityVector anchor_dist;
  ProbabilityVector model_dist;
};

/// H(q, pi) = -sum_v q(v) log pi(v), with the probability floor inside the
/// log. Throws on support mismatch.
double cross_entropy(const AnchoredPair& pair);

/// Answer distribution with named outcomes, as produced analytically from a
/// policy or empirically from rollouts.
struct AnswerDistribution {
  std::vector<std::string> answers;  // sorted, distinct
  ProbabilityVector probs;

  AnswerDistribution(std::vector<std::string> answers_in, ProbabilityVector probs_in);

  std::size_t index_of(const std::string& answer) const;  // throws if absent

  static AnswerDistribution from_policy(const TabularPolicy& policy);
  static AnswerDistribution empirical(const RolloutSet& rollouts);
};

/// softmax(mass / tau) over answers. Note the exponent's argument is the
/// probability itself, not its log; as tau -> 0+ the result concentrates on
/// the argmax mass.
ProbabilityVector tempered_answer_dist(const ProbabilityVector& answer_dist, double tau);

/// Token-level unified reward for one trajectory.
double unified_reward(const RewardConfig& config, const Trajectory& traj);

/// Answer-level unified reward for each rollout. When answer_dist is absent
/// the empirical rollout distribution is used (the EMPO instantiation).
std::vector<double> unified_reward(const RewardConfig& config, const RolloutSet& rollouts,
                                   const std::optional<AnswerDistribution>& answer_dist = std::nullopt);

/// Answer-level unified reward for a single realized answer against an
/// explicit answer distribution.
double unified_reward(const RewardConfig& config, const std::string& realized_answer,
                      const AnswerDistribution& answer_dist);

/// The instantiation table. Supported kinds: self-certainty, token-entropy,
/// trajectory-entropy, probability, empo, majority-voting (which takes tau).
RewardConfig instantiate(EstimatorKind kind, double tau = 1.0);

}  // namespace urlvr
