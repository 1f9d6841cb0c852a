#include "urlvr/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace urlvr {

namespace {

std::string majority_answer(const std::vector<std::string>& answers) {
  std::map<std::string, std::size_t> counts;
  for (const auto& a : answers) ++counts[a];
  std::size_t best = 0;
  std::string maj;
  for (const auto& [answer, count] : counts) {
    if (count > best) {
      best = count;
      maj = answer;
    }
  }
  return maj;
}

bool is_binary(double v) { return v == 0.0 || v == 1.0; }

}  // namespace

BatchRecord::BatchRecord(std::vector<PromptRecord> prompts_in) : prompts(std::move(prompts_in)) {
  if (prompts.empty()) throw std::invalid_argument("BatchRecord: empty batch");
  n_ = prompts.front().answers.size();
  if (n_ == 0) throw std::invalid_argument("BatchRecord: prompts need at least one rollout");
  for (const auto& p : prompts) {
    if (p.answers.size() != n_ || p.pseudo_rewards.size() != n_ || p.oracle_rewards.size() != n_ ||
        (p.certainty && p.certainty->size() != n_)) {
      throw std::invalid_argument("BatchRecord: batch is not rectangular");
    }
    for (double r : p.oracle_rewards) {
      if (!is_binary(r)) throw std::invalid_argument("BatchRecord: oracle rewards must be binary");
    }
  }
}

double label_accuracy(const BatchRecord& batch) {
  std::size_t hits = 0;
  for (const auto& p : batch.prompts) {
    if (majority_answer(p.answers) == p.ground_truth) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(batch.prompts.size());
}

double reward_accuracy(const BatchRecord& batch) {
  std::size_t hits = 0, total = 0;
  for (const auto& p : batch.prompts) {
    for (std::size_t j = 0; j < p.pseudo_rewards.size(); ++j) {
      if (!is_binary(p.pseudo_rewards[j])) {
        throw std::invalid_argument("reward_accuracy: pseudo-rewards must be binary");
      }
      if (p.pseudo_rewards[j] == p.oracle_rewards[j]) ++hits;
      ++total;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double gt_reward(const BatchRecord& batch) {
  double sum = 0.0;
  std::size_t total = 0;
  for (const auto& p : batch.prompts) {
    sum = std::accumulate(p.oracle_rewards.begin(), p.oracle_rewards.end(), sum);
    total += p.oracle_rewards.size();
  }
  return sum / static_cast<double>(total);
}

double mv_reward(const BatchRecord& batch) {
  double sum = 0.0;
  std::size_t total = 0;
  for (const auto& p : batch.prompts) {
    sum = std::accumulate(p.pseudo_rewards.begin(), p.pseudo_rewards.end(), sum);
    total += p.pseudo_rewards.size();
  }
  return sum / static_cast<double>(total);
}

double certainty_label_accuracy(const BatchRecord& batch) {
  std::size_t hits = 0;
  for (const auto& p : batch.prompts) {
    if (!p.certainty) {
      throw std::invalid_argument("certainty_label_accuracy: missing certainty scores");
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < p.certainty->size(); ++j) {
      if ((*p.certainty)[j] > (*p.certainty)[best]) best = j;  // lowest index wins ties
    }
    if (p.oracle_rewards[best] == 1.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(batch.prompts.size());
}

std::optional<std::size_t> model_collapse_step(const std::vector<double>& accuracy_trace,
                                               double threshold) {
  if (accuracy_trace.empty()) {
    throw std::invalid_argument("model_collapse_step: empty accuracy trace");
  }
  for (std::size_t i = 0; i < accuracy_trace.size(); ++i) {
    if (accuracy_trace[i] < threshold) return i + 1;
  }
  return std::nullopt;
}

double kl_drift(const TabularPolicy& policy, const TabularPolicy& ref) {
  if (policy.size() != ref.size()) {
    throw std::invalid_argument("kl_drift: policy and reference spaces differ in size");
  }
  return kl_divergence(ProbabilityVector(policy.probabilities()),
                       ProbabilityVector(ref.probabilities()));
}

double kl_drift(const std::vector<std::pair<TabularPolicy, TabularPolicy>>& problems) {
  if (problems.empty()) throw std::invalid_argument("kl_drift: no problems");
  double sum = 0.0;
  for (const auto& [policy, ref] : problems) sum += kl_drift(policy, ref);
  return sum / static_cast<double>(problems.size());
}

CostReport cost_report(const std::vector<std::uint64_t>& collapse_steps, std::uint64_t batch,
                       std::uint64_t rollouts, std::uint64_t response_len,
                       const BaselineCost& baseline) {
  if (collapse_steps.empty() || batch == 0 || rollouts == 0 || response_len == 0) {
    throw std::invalid_argument("cost_report: counts must be positive");
  }
  const double total_steps = static_cast<double>(
      std::accumulate(collapse_steps.begin(), collapse_steps.end(), std::uint64_t{0}));
  const double indicator = static_cast<double>(response_len) * static_cast<double>(rollouts) *
                           total_steps * static_cast<double>(batch);
  const double base = static_cast<double>(baseline.response_len) *
                      static_cast<double>(baseline.rollouts) *
                      static_cast<double>(baseline.dataset_size) *
                      static_cast<double>(baseline.models);
  if (base == 0.0) throw std::invalid_argument("cost_report: zero baseline");
  return CostReport{indicator, base, base / indicator};
}

}  // namespace urlvr
