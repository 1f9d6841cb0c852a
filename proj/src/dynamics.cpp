#include "urlvr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urlvr {

EtaSchedule::EtaSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("EtaSchedule: empty schedule");
  for (double eta : values_) {
    if (!(eta > 0.0) || eta > 1.0) {
      throw std::invalid_argument("EtaSchedule: every eta must lie in (0, 1]");
    }
  }
}

EtaSchedule EtaSchedule::constant(double eta) { return EtaSchedule(std::vector<double>{eta}); }

EtaSchedule EtaSchedule::per_step(std::vector<double> values) {
  return EtaSchedule(std::move(values));
}

double EtaSchedule::minimum() const { return *std::min_element(values_.begin(), values_.end()); }

DynamicsParams DynamicsParams::create(double beta, EtaSchedule eta) {
  if (!(beta > 0.0)) throw std::invalid_argument("DynamicsParams: beta must be positive");
  const double alpha = std::exp(1.0 / beta);
  if (!(alpha > 1.0)) throw std::invalid_argument("DynamicsParams: alpha must exceed 1");
  const double eta_min = eta.minimum();
  return DynamicsParams{beta, alpha, std::move(eta), eta_min};
}

DynamicsParams DynamicsParams::create(double beta, double eta) {
  return create(beta, EtaSchedule::constant(eta));
}

TabularPolicy optimal_policy(const TabularPolicy& ref, const std::vector<double>& rewards,
                             double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("optimal_policy: beta must be positive");
  if (rewards.size() != ref.size()) {
    throw std::invalid_argument("optimal_policy: rewards not aligned with trajectory table");
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("optimal_policy: non-finite reward");
  }
  // Reweighting by exp(r/beta) is a logit shift; softmax normalization plays
  // the role of the partition function.
  std::vector<double> logits(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) logits[i] = ref.logits()[i] + rewards[i] / beta;
  return ref.with_logits(std::move(logits));
}

double p_maj_star(double p, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("p_maj_star: beta must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_maj_star: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return p;
  const double alpha = std::exp(1.0 / beta);
  return std::min(1.0, alpha * p / (1.0 + (alpha - 1.0) * p));
}

double error_step(double epsilon, const DynamicsParams& params, std::size_t k) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("error_step: epsilon must lie in [0, 1]");
  }
  const double eta = params.eta.at(k);
  const double multiplier =
      1.0 - eta * (params.alpha - 1.0) * (1.0 - epsilon) / (params.alpha - (params.alpha - 1.0) * epsilon);
  return std::clamp(epsilon * multiplier, 0.0, epsilon);
}

DynamicsState effective_step(const DynamicsState& state, const DynamicsParams& params) {
  const double p = state.p_maj;
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("effective_step: p_maj must lie in [0, 1]");
  }
  const double eta = params.eta.at(state.iteration);
  const double p_star = p_maj_star(p, params.beta);
  double p_next = (eta == 1.0) ? p_star : p + eta * (p_star - p);
  p_next = std::clamp(p_next, p, p_star);
  const double eps_next = error_step(state.epsilon, params, state.iteration);
  return DynamicsState{state.iteration + 1, p_next, eps_next};
}

SimulationTrace simulate_recurrence(double p0, const DynamicsParams& params, std::size_t steps) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw std::invalid_argument("simulate_recurrence: p0 must lie in [0, 1]");
  }
  if (steps == 0) throw std::invalid_argument("simulate_recurrence: need at least one step");

  SimulationTrace trace;
  trace.p0 = p0;
  trace.degenerate = (p0 == 0.0 || p0 == 1.0);
  trace.states.reserve(steps);

  DynamicsState state{0, p0, 1.0 - p0};
  for (std::size_t k = 0; k < steps; ++k) {
    state = effective_step(state, params);
    trace.states.push_back(state);
  }
  return trace;
}

double geometric_envelope(double p0, const DynamicsParams& params, std::size_t steps) {
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::invalid_argument("geometric_envelope: p0 must lie in (0, 1)");
  }
  const double rate = 1.0 - params.eta_min * (params.alpha - 1.0) / params.alpha;
  return std::pow(rate, static_cast<double>(steps)) * (1.0 - p0) / p0;
}

TabularPolicy limiting_policy(const TabularPolicy& ref, const std::string& maj) {
  if (answer_mass(ref, maj) <= 0.0) {
    throw std::invalid_argument("limiting_policy: majority answer has zero reference mass");
  }
  std::vector<double> logits(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    logits[i] = ref.answer_of(i) == maj ? ref.logits()[i]
                                        : -std::numeric_limits<double>::infinity();
  }
  return ref.with_logits(std::move(logits));
}

std::vector<double> estimator_rewards(const TabularPolicy& current, EstimatorKind kind) {
  const std::size_t n = current.size();
  std::vector<double> rewards(n);
  switch (kind) {
    case EstimatorKind::self_certainty:
      for (std::size_t i = 0; i < n; ++i) rewards[i] = self_certainty(current.trajectory(i));
      return rewards;
    case EstimatorKind::token_entropy:
      for (std::size_t i = 0; i < n; ++i) rewards[i] = token_entropy_reward(current.trajectory(i));
      return rewards;
    case EstimatorKind::trajectory_entropy: {
      const auto probs = current.probabilities();
      for (std::size_t i = 0; i < n; ++i) {
        rewards[i] = floored_log(probs[i]) / static_cast<double>(current.trajectory(i).length());
      }
      return rewards;
    }
    case EstimatorKind::probability: {
      const auto probs = current.probabilities();
      for (std::size_t i = 0; i < n; ++i) rewards[i] = probs[i];
      return rewards;
    }
    case EstimatorKind::empo: {
      const auto masses = answer_masses(current);
      const auto& answers = current.answer_set();
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(answers.begin(), answers.end(), current.answer_of(i));
        rewards[i] = masses[static_cast<std::size_t>(it - answers.begin())];
      }
      return rewards;
    }
    default:
      throw std::invalid_argument("estimator_rewards: unsupported kind: " + to_string(kind));
  }
}

TabularPolicy estimator_policy_map(const TabularPolicy& ref, const TabularPolicy& current,
                                   EstimatorKind kind, double beta) {
  if (ref.size() != current.size()) {
    throw std::invalid_argument("estimator_policy_map: misaligned trajectory spaces");
  }
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref.answer_of(i) != current.answer_of(i)) {
      throw std::invalid_argument("estimator_policy_map: misaligned answer maps");
    }
  }
  return optimal_policy(ref, estimator_rewards(current, kind), beta);
}

}  // namespace urlvr
