#include "urlvr/unified.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace urlvr {

std::string RewardConfig::describe() const {
  std::ostringstream oss;
  oss << (granularity == Granularity::token_level ? "token" : "answer") << ", ";
  switch (anchor) {
    case AnchorKind::uniform: oss << "uniform"; break;
    case AnchorKind::one_hot_realized: oss << "one-hot-realized"; break;
    case AnchorKind::one_hot_answer: oss << "one-hot-answer"; break;
    case AnchorKind::tempered_answer: oss << "tempered-answer(" << tau << ")"; break;
    case AnchorKind::self_model: oss << "self-model"; break;
  }
  oss << ", sign=" << (sign > 0 ? "+1" : "-1") << ", ";
  switch (transform) {
    case TransformKind::identity: oss << "identity"; break;
    case TransformKind::affine:
      if (affine_shift_is_neg_log_vocab) {
        oss << "affine(-log|V|)";
      } else {
        oss << "affine(" << affine_shift << ")";
      }
      break;
    case TransformKind::exp_scaled:
      oss << (exp_scale_by_count ? "exp-scaled(|I|)" : "exp-scaled(1)");
      break;
  }
  return oss.str();
}

double cross_entropy(const AnchoredPair& pair) {
  if (pair.anchor_dist.size() != pair.model_dist.size()) {
    throw std::invalid_argument("cross_entropy: support size mismatch");
  }
  double h = 0.0;
  for (std::size_t v = 0; v < pair.anchor_dist.size(); ++v) {
    if (pair.anchor_dist[v] > 0.0) h -= pair.anchor_dist[v] * floored_log(pair.model_dist[v]);
  }
  return h;
}

AnswerDistribution::AnswerDistribution(std::vector<std::string> answers_in,
                                       ProbabilityVector probs_in)
    : answers(std::move(answers_in)), probs(std::move(probs_in)) {
  if (answers.size() != probs.size()) {
    throw std::invalid_argument("AnswerDistribution: answers and probs sizes differ");
  }
  if (!std::is_sorted(answers.begin(), answers.end()) ||
      std::adjacent_find(answers.begin(), answers.end()) != answers.end()) {
    throw std::invalid_argument("AnswerDistribution: answers must be sorted and distinct");
  }
}

std::size_t AnswerDistribution::index_of(const std::string& answer) const {
  const auto it = std::lower_bound(answers.begin(), answers.end(), answer);
  if (it == answers.end() || *it != answer) {
    throw std::invalid_argument("AnswerDistribution: unknown answer: " + answer);
  }
  return static_cast<std::size_t>(it - answers.begin());
}

AnswerDistribution AnswerDistribution::from_policy(const TabularPolicy& policy) {
  return AnswerDistribution(policy.answer_set(), ProbabilityVector(answer_masses(policy)));
}

AnswerDistribution AnswerDistribution::empirical(const RolloutSet& rollouts) {
  if (rollouts.size() == 0) {
    throw std::invalid_argument("AnswerDistribution::empirical: empty rollout set");
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& traj : rollouts.rollouts) ++counts[traj.answer];
  std::vector<std::string> answers;
  std::vector<double> probs;
  for (const auto& [answer, count] : counts) {
    answers.push_back(answer);
    probs.push_back(static_cast<double>(count) / static_cast<double>(rollouts.size()));
  }
  return AnswerDistribution(std::move(answers), ProbabilityVector(std::move(probs)));
}

ProbabilityVector tempered_answer_dist(const ProbabilityVector& answer_dist, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tempered_answer_dist: tau must be positive");
  std::vector<double> scaled(answer_dist.size());
  for (std::size_t i = 0; i < answer_dist.size(); ++i) scaled[i] = answer_dist[i] / tau;
  return ProbabilityVector(softmax(scaled));
}

namespace {

double apply_transform(const RewardConfig& config, double z, double granularity_size,
                       double mean_log_vocab) {
  switch (config.transform) {
    case TransformKind::identity:
      return z;
    case TransformKind::affine:
      return z + (config.affine_shift_is_neg_log_vocab ? -mean_log_vocab : config.affine_shift);
    case TransformKind::exp_scaled:
      return std::exp((config.exp_scale_by_count ? granularity_size : 1.0) * z);
  }
  throw std::invalid_argument("unified_reward: unknown transform");
}

}  // namespace

double unified_reward(const RewardConfig& config, const Trajectory& traj) {
  if (config.granularity != Granularity::token_level) {
    throw std::invalid_argument("unified_reward: answer-level config needs an answer distribution");
  }
  const double n = static_cast<double>(traj.length());
  double total_ce = 0.0;
  double total_log_vocab = 0.0;
  for (std::size_t t = 0; t < traj.length(); ++t) {
    const ProbabilityVector& model = traj.step_dists[t];
    total_log_vocab += std::log(static_cast<double>(model.size()));
    switch (config.anchor) {
      case AnchorKind::uniform:
        total_ce += cross_entropy({ProbabilityVector::uniform(model.size()), model});
        break;
      case AnchorKind::one_hot_realized:
        total_ce += cross_entropy({ProbabilityVector::one_hot(model.size(), traj.tokens[t]), model});
        break;
      case AnchorKind::self_model:
        total_ce += cross_entropy({model, model});
        break;
      default:
        throw std::invalid_argument("unified_reward: answer-level anchor with token-level config");
    }
  }
  const double z = static_cast<double>(config.sign) * total_ce / n;
  return apply_transform(config, z, n, total_log_vocab / n);
}

double unified_reward(const RewardConfig& config, const std::string& realized_answer,
                      const AnswerDistribution& answer_dist) {
  if (config.granularity != Granularity::answer_level) {
    throw std::invalid_argument("unified_reward: token-level config needs a trajectory");
  }
  const std::size_t idx = answer_dist.index_of(realized_answer);
  ProbabilityVector model =
      config.anchor == AnchorKind::tempered_answer
          ? tempered_answer_dist(answer_dist.probs, config.tau)
          : answer_dist.probs;
  if (config.anchor != AnchorKind::tempered_answer && config.anchor != AnchorKind::one_hot_answer) {
    throw std::invalid_argument("unified_reward: token-level anchor with answer-level config");
  }
  const double ce =
      cross_entropy({ProbabilityVector::one_hot(model.size(), idx), std::move(model)});
  const double z = static_cast<double>(config.sign) * ce;  // |I| = 1 at answer level
  return apply_transform(config, z, 1.0, 0.0);
}

std::vector<double> unified_reward(const RewardConfig& config, const RolloutSet& rollouts,
                                   const std::optional<AnswerDistribution>& answer_dist) {
  const AnswerDistribution dist =
      answer_dist ? *answer_dist : AnswerDistribution::empirical(rollouts);
  std::vector<double> rewards;
  rewards.reserve(rollouts.size());
  for (const auto& traj : rollouts.rollouts) {
    rewards.push_back(unified_reward(config, traj.answer, dist));
  }
  return rewards;
}

RewardConfig instantiate(EstimatorKind kind, double tau) {
  RewardConfig config;
  switch (kind) {
    case EstimatorKind::self_certainty:
      config.granularity = Granularity::token_level;
      config.anchor = AnchorKind::uniform;
      config.sign = +1;
      config.transform = TransformKind::affine;
      config.affine_shift_is_neg_log_vocab = true;
      return config;
    case EstimatorKind::token_entropy:
      config.granularity = Granularity::token_level;
      config.anchor = AnchorKind::self_model;
      config.sign = -1;
      config.transform = TransformKind::identity;
      return config;
    case EstimatorKind::trajectory_entropy:
      config.granularity = Granularity::token_level;
      config.anchor = AnchorKind::one_hot_realized;
      config.sign = -1;
      config.transform = TransformKind::identity;
      return config;
    case EstimatorKind::probability:
      config.granularity = Granularity::token_level;
      config.anchor = AnchorKind::one_hot_realized;
      config.sign = -1;
      config.transform = TransformKind::exp_scaled;
      config.exp_scale_by_count = true;
      return config;
    case EstimatorKind::empo:
      config.granularity = Granularity::answer_level;
      config.anchor = AnchorKind::one_hot_answer;
      config.sign = -1;
      config.transform = TransformKind::exp_scaled;
      config.exp_scale_by_count = false;
      return config;
    case EstimatorKind::majority_voting:
      if (!(tau > 0.0)) throw std::invalid_argument("instantiate: majority-voting needs tau > 0");
      config.granularity = Granularity::answer_level;
      config.anchor = AnchorKind::tempered_answer;
      config.tau = tau;
      config.sign = -1;
      config.transform = TransformKind::exp_scaled;
      config.exp_scale_by_count = false;
      return config;
    default:
      throw std::invalid_argument("instantiate: unsupported estimator kind: " + to_string(kind));
  }
}

}  // namespace urlvr
