#include "urlvr/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urlvr {

double floored_log(double p) noexcept {
  return std::log(std::max(p, kProbFloor));
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("ProbabilityVector: empty outcome set");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw std::invalid_argument("ProbabilityVector: negative or NaN entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform: n must be positive");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbabilityVector ProbabilityVector::one_hot(std::size_t n, std::size_t index) {
  if (index >= n) throw std::invalid_argument("one_hot: index out of range");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return ProbabilityVector(std::move(p));
}

std::size_t ProbabilityVector::argmax() const noexcept {
  return static_cast<std::size_t>(
      std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

double entropy(const ProbabilityVector& dist) {
  double h = 0.0;
  for (double p : dist.probs()) {
    if (p > 0.0) h -= p * floored_log(p);
  }
  return h;
}

double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kl_divergence: support size mismatch");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * (floored_log(p[i]) - floored_log(q[i]));
  }
  return kl;
}

ProbabilityVector apply_temperature(const ProbabilityVector& dist, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("apply_temperature: temperature must be positive");
  }
  if (temperature == 1.0) return dist;

  std::vector<double> scaled(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    scaled[i] = floored_log(dist[i]) / temperature;
  }
  return ProbabilityVector(softmax(scaled));
}

std::vector<double> softmax(const std::vector<double>& logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty input");
  double max_logit = -std::numeric_limits<double>::infinity();
  for (double l : logits) {
    if (std::isnan(l)) throw std::invalid_argument("softmax: NaN logit");
    max_logit = std::max(max_logit, l);
  }
  if (!std::isfinite(max_logit)) {
    throw std::invalid_argument("softmax: no finite logit");
  }
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);  // exp(-inf) == 0 exactly
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

}  // namespace urlvr
