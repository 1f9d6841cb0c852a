#pragma once

// Closed-form KL-regularized sharpening dynamics: the one-step optimal
// policy, the majority-mass recurrence and its error form, the geometric
// convergence envelope, the limiting policy, and the per-estimator one-step
// optimal-policy maps.

#include "urlvr/policy.hpp"
#include "urlvr/rewards.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace urlvr {

/// State of the majority-mass recurrence. epsilon is carried separately from
/// p_maj (not recomputed as 1 - p_maj) so that tiny errors survive the
/// approach to the fixed point without cancellation.
struct DynamicsState {
  std::size_t iteration = 0;
  double p_maj = 0.0;
  double epsilon = 1.0;
};

/// Per-step efficiency schedule: a constant, or a list cycled over steps.
class EtaSchedule {
 public:
  static EtaSchedule constant(double eta);
  static EtaSchedule per_step(std::vector<double> values);

  double at(std::size_t k) const { return values_[k % values_.size()]; }
  double minimum() const;
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  explicit EtaSchedule(std::vector<double> values);
  std::vector<double> values_;
};

struct DynamicsParams {
  double beta;       // KL strength, > 0
  double alpha;      // exp(1/beta), computed once; > 1
  EtaSchedule eta;   // step efficiencies in (0, 1]
  double eta_min;    // lower bound over the schedule

  static DynamicsParams create(double beta, EtaSchedule eta);
  static DynamicsParams create(double beta, double eta = 1.0);
};

/// Exact reweighting pi_ref * exp(r / beta), renormalized, over the same
/// trajectory table. Rewards must be finite and aligned with the table.
TabularPolicy optimal_policy(const TabularPolicy& ref, const std::vector<double>& rewards,
                             double beta);

/// One-step optimum of the majority mass: alpha p / (1 + (alpha - 1) p).
/// Fixed points exactly {0, 1}; strictly increasing in p.
double p_maj_star(double p, double beta);

/// p' = p + eta_k (p* - p). The ordering p <= p' <= p* holds exactly.
DynamicsState effective_step(const DynamicsState& state, const DynamicsParams& params);

/// eps' = eps (1 - eta (alpha-1)(1-eps) / (alpha - (alpha-1) eps)),
/// clamped to [0, eps].
double error_step(double epsilon, const DynamicsParams& params, std::size_t k = 0);

struct SimulationTrace {
  std::vector<DynamicsState> states;  // states after steps 1..K
  double p0 = 0.0;
  bool degenerate = false;  // p0 in {0, 1}: the trace is constant
};

/// K applications of the effective step from p0. Monotone nondecreasing
/// p_maj; epsilon is evolved in error form.
SimulationTrace simulate_recurrence(double p0, const DynamicsParams& params, std::size_t steps);

/// Envelope bound on the error after K steps:
///   eps_K <= (1 - eta_min (alpha-1)/alpha)^K * eps_0 / p_0.
/// The eps_0/p_0 factor is the odds of the initial error; the bound follows
/// from the per-step contraction of the odds eps/p and is tight as K grows.
double geometric_envelope(double p0, const DynamicsParams& params, std::size_t steps);

/// Renormalized restriction of ref to trajectories answering maj; exact
/// zeros elsewhere. Throws if maj has zero reference mass.
TabularPolicy limiting_policy(const TabularPolicy& ref, const std::string& maj);

/// One-step optimal policy induced by an estimator evaluated under `current`:
/// ref reweighted by exp(r(current)/beta). Token-level kinds read the
/// enumerated trajectories' step distributions; trajectory-level and
/// answer-level kinds read the current policy's trajectory/answer masses.
/// Supported kinds: self-certainty, token-entropy, trajectory-entropy,
/// probability, empo.
TabularPolicy estimator_policy_map(const TabularPolicy& ref, const TabularPolicy& current,
                                   EstimatorKind kind, double beta);

/// The per-trajectory reward vector used by estimator_policy_map.
std::vector<double> estimator_rewards(const TabularPolicy& current, EstimatorKind kind);

}  // namespace urlvr
