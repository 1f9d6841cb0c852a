#pragma once

// Finite probability distributions and the information-theoretic kernels
// (entropy, KL, log with probability floor) shared by every module.

#include <cstddef>
#include <vector>

namespace urlvr {

// Floor applied to any probability before it enters a logarithm. Keeps
// entropies and divergences finite on one-hot or near-degenerate inputs
// while perturbing results far below the test tolerances used throughout.
inline constexpr double kProbFloor = 1e-12;

// Tolerance for the "entries sum to 1" invariant.
inline constexpr double kSumTolerance = 1e-9;

// log(max(p, kProbFloor))
double floored_log(double p) noexcept;

/// A distribution over a finite outcome set, indexed 0..size()-1.
/// Immutable after construction; construction validates non-negativity
/// and normalization.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  static ProbabilityVector uniform(std::size_t n);
  static ProbabilityVector one_hot(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  /// Index of the largest entry; lowest index wins ties.
  std::size_t argmax() const noexcept;

  bool operator==(const ProbabilityVector& other) const = default;

 private:
  std::vector<double> probs_;
};

/// Shannon entropy in nats. Exact-zero entries contribute exactly 0.
double entropy(const ProbabilityVector& dist);

/// KL(p || q) in nats, with the floor applied inside each log.
/// Supports must have equal size.
double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

/// Temperature scaling: softmax(log(dist) / T), i.e. dist^(1/T) renormalized.
/// T = 1 returns the input unchanged. Throws on T <= 0.
ProbabilityVector apply_temperature(const ProbabilityVector& dist, double temperature);

/// Numerically stable softmax of arbitrary reals. -inf entries map to
/// exact zero probability; at least one entry must be finite.
std::vector<double> softmax(const std::vector<double>& logits);

}  // namespace urlvr
