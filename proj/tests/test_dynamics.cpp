#include "urlvr/dynamics.hpp"
#include "urlvr/experiment.hpp"
#include "urlvr/rng.hpp"
#include "urlvr/trainer.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace urlvr;

namespace {

Trajectory unit_traj(std::size_t vocab, std::size_t token, std::string answer) {
  return Trajectory({token},
                    {ProbabilityVector(std::vector<double>(vocab, 1.0 / vocab))},
                    std::move(answer));
}

// n trajectories, first n_a answering A, the rest B.
TabularPolicy ab_policy(std::vector<double> logits, std::size_t n_a) {
  std::vector<Trajectory> table;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    table.push_back(unit_traj(logits.size(), i, i < n_a ? "A" : "B"));
  }
  return TabularPolicy(std::move(logits), std::move(table));
}

double tv_distance(const TabularPolicy& a, const TabularPolicy& b) {
  const auto pa = a.probabilities(), pb = b.probabilities();
  double tv = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) tv += std::abs(pa[i] - pb[i]);
  return tv / 2.0;
}

}  // namespace

TEST_CASE("p_maj_star") {
  CHECK(p_maj_star(0.0, 1.0) == 0.0);
  CHECK(p_maj_star(1.0, 1.0) == 1.0);
  CHECK(p_maj_star(0.5, 1.0) ==
        doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)).epsilon(1e-12));
  // p=0.1, beta=0.5 (alpha=e^2)
  const double alpha = std::exp(2.0);
  CHECK(p_maj_star(0.1, 0.5) ==
        doctest::Approx(alpha * 0.1 / (1.0 + (alpha - 1.0) * 0.1)).epsilon(1e-12));
  CHECK(p_maj_star(0.1, 0.5) == doctest::Approx(0.45085).epsilon(1e-4));
  CHECK_THROWS_AS(p_maj_star(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p_maj_star(1.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p_maj_star(0.5, 0.0), std::invalid_argument);

  // strictly increasing in p
  double prev = 0.0;
  for (double p = 0.05; p < 1.0; p += 0.05) {
    const double v = p_maj_star(p, 0.8);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("optimal_policy") {
  SUBCASE("constant rewards cancel in the partition function") {
    const auto ref = ab_policy({0.4, -0.3, 0.2, 0.0}, 2);
    const auto out = optimal_policy(ref, {2.5, 2.5, 2.5, 2.5}, 1.0);
    CHECK(tv_distance(ref, out) < 1e-15);
  }
  SUBCASE("uniform ref, binary majority rewards reproduce Eq. 9 at p=0.5") {
    const auto ref = ab_policy({0.0, 0.0, 0.0, 0.0}, 2);
    const auto out = optimal_policy(ref, {1.0, 1.0, 0.0, 0.0}, 1.0);
    CHECK(answer_mass(out, "A") ==
          doctest::Approx(std::exp(1.0) / (std::exp(1.0) + 1.0)).epsilon(1e-12));
  }
  SUBCASE("beta -> infinity returns the reference") {
    const auto ref = ab_policy({0.7, -0.1, 0.3, -0.4}, 2);
    const auto out = optimal_policy(ref, {1.0, 1.0, 0.0, 0.0}, 1e6);
    CHECK(tv_distance(ref, out) < 1e-5);
  }
  SUBCASE("errors") {
    const auto ref = ab_policy({0.0, 0.0}, 1);
    CHECK_THROWS_AS(optimal_policy(ref, {1.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_policy(ref, {1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(
        optimal_policy(ref, {-std::numeric_limits<double>::infinity(), 0.0}, 1.0),
        std::invalid_argument);
  }
}

TEST_CASE("closed-form consistency: reweighting reproduces p_maj_star exactly") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng.below(8);
    const std::size_t n_a = 1 + rng.below(n - 1);
    std::vector<double> logits(n);
    for (auto& l : logits) l = 3.0 * rng.unit() - 1.5;
    const double beta = 0.25 + 2.0 * rng.unit();
    const auto ref = ab_policy(logits, n_a);

    std::vector<double> rewards(n, 0.0);
    for (std::size_t i = 0; i < n_a; ++i) rewards[i] = 1.0;

    const double p = answer_mass(ref, "A");
    const double expected = p_maj_star(p, beta);
    const double actual = answer_mass(optimal_policy(ref, rewards, beta), "A");
    CHECK(actual == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("effective_step") {
  const auto params = DynamicsParams::create(1.0, 0.5);
  const DynamicsState state{0, 0.5, 0.5};
  const auto next = effective_step(state, params);
  CHECK(next.iteration == 1);
  // 0.5 + 0.5 (e/(e+1) - 0.5)
  const double p_star = std::exp(1.0) / (std::exp(1.0) + 1.0);
  CHECK(next.p_maj == doctest::Approx(0.5 + 0.5 * (p_star - 0.5)).epsilon(1e-12));
  CHECK(next.p_maj == doctest::Approx(0.615529).epsilon(1e-6));

  SUBCASE("eta = 1 reproduces p_maj_star exactly") {
    const auto full = DynamicsParams::create(1.0, 1.0);
    const auto stepped = effective_step(DynamicsState{0, 0.5, 0.5}, full);
    CHECK(stepped.p_maj == p_maj_star(0.5, 1.0));
  }
  SUBCASE("fixed point at p = 1") {
    const auto stepped = effective_step(DynamicsState{3, 1.0, 0.0}, params);
    CHECK(stepped.p_maj == 1.0);
    CHECK(stepped.epsilon == 0.0);
  }
  SUBCASE("ordering p <= p' <= p* for a (p, eta) grid") {
    for (double p = 0.0; p <= 1.0; p += 0.04) {
      for (double eta : {0.1, 0.3, 0.7, 1.0}) {
        const auto grid = DynamicsParams::create(0.7, eta);
        const auto out = effective_step(DynamicsState{0, p, 1.0 - p}, grid);
        CHECK(out.p_maj >= p);
        CHECK(out.p_maj <= p_maj_star(p, 0.7));
      }
    }
  }
}

TEST_CASE("error_step") {
  const auto params = DynamicsParams::create(1.0, 1.0);
  CHECK(error_step(1.0, params) == 1.0);  // degenerate fixed point
  CHECK(error_step(0.5, params) ==
        doctest::Approx(1.0 - std::exp(1.0) / (std::exp(1.0) + 1.0)).epsilon(1e-12));
  CHECK(error_step(0.5, params) == doctest::Approx(0.268941).epsilon(1e-6));
  CHECK_THROWS_AS(error_step(-0.1, params), std::invalid_argument);

  // eps -> 0 multiplier approaches 1 - eta (alpha-1)/alpha
  const double alpha = std::exp(1.0);
  const double eps = 1e-9;
  CHECK(error_step(eps, params) / eps ==
        doctest::Approx(1.0 - (alpha - 1.0) / alpha).epsilon(1e-6));

  // strictly decreasing on (0, 1)
  for (double e = 0.05; e < 1.0; e += 0.05) {
    CHECK(error_step(e, params) < e);
  }
}

TEST_CASE("simulate_recurrence") {
  SUBCASE("one step equals p_maj_star") {
    const auto trace = simulate_recurrence(0.5, DynamicsParams::create(1.0, 1.0), 1);
    REQUIRE(trace.states.size() == 1);
    CHECK(trace.states[0].p_maj == p_maj_star(0.5, 1.0));
    CHECK(trace.states[0].iteration == 1);
  }
  SUBCASE("p0=0.1, beta=1, eta=1: ratio limit and explicit bound at K=20") {
    const auto params = DynamicsParams::create(1.0, 1.0);
    const auto trace = simulate_recurrence(0.1, params, 21);
    // p_20 >= 1 - e^{-20} * (eps0/p0) * margin
    const double bound = std::exp(-20.0) * 9.0 * 1.01;
    CHECK(trace.states[19].p_maj >= 1.0 - bound);
    // consecutive epsilon ratio approaches e^{-1}
    const double ratio = trace.states[20].epsilon / trace.states[19].epsilon;
    CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }
  SUBCASE("monotone p_maj and decreasing epsilon") {
    const auto trace = simulate_recurrence(0.2, DynamicsParams::create(2.0, 0.4), 60);
    for (std::size_t k = 1; k < trace.states.size(); ++k) {
      CHECK(trace.states[k].p_maj >= trace.states[k - 1].p_maj);
      CHECK(trace.states[k].epsilon <= trace.states[k - 1].epsilon);
    }
  }
  SUBCASE("degenerate p0") {
    const auto trace = simulate_recurrence(1.0, DynamicsParams::create(1.0, 1.0), 5);
    CHECK(trace.degenerate);
    for (const auto& s : trace.states) CHECK(s.p_maj == 1.0);
  }
}

TEST_CASE("geometric envelope bounds every tested (beta, eta) grid") {
  // odds-form envelope: eps_K <= (1 - eta_min (alpha-1)/alpha)^K eps0/p0
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double p0 : {0.01, 0.1, 0.5, 0.9}) {
      for (double eta : {0.25, 0.6, 1.0}) {
        const auto params = DynamicsParams::create(beta, eta);
        const auto trace = simulate_recurrence(p0, params, 50);
        for (std::size_t k = 0; k < trace.states.size(); ++k) {
          const double bound = geometric_envelope(p0, params, k + 1);
          CHECK(trace.states[k].epsilon <= bound * (1.0 + 1e-12));
        }
        // the state invariant p_maj + epsilon = 1 holds along the trace
        for (const auto& state : trace.states) {
          CHECK(std::abs(state.p_maj + state.epsilon - 1.0) <= 1e-12);
        }
      }
      // alternating schedule is bounded by its eta_min envelope
      const auto params = DynamicsParams::create(beta, EtaSchedule::per_step({0.3, 0.9}));
      CHECK(params.eta_min == 0.3);
      const auto trace = simulate_recurrence(p0, params, 50);
      for (std::size_t k = 1; k < trace.states.size(); ++k) {
        CHECK(trace.states[k].p_maj >= trace.states[k - 1].p_maj);
      }
      for (std::size_t k = 0; k < trace.states.size(); ++k) {
        CHECK(trace.states[k].epsilon <=
              geometric_envelope(p0, params, k + 1) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("limiting_policy") {
  SUBCASE("forced renormalization") {
    // A-masses {0.2, 0.1}, B-rest 0.7
    const auto ref =
        ab_policy({std::log(0.2), std::log(0.1), std::log(0.7)}, 2);
    const auto limit = limiting_policy(ref, "A");
    const auto probs = limit.probabilities();
    CHECK(probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(probs[2] == 0.0);
    CHECK(answer_mass(limit, "B") == 0.0);
  }
  SUBCASE("already concentrated") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto ref = ab_policy({0.3, -0.4, -inf}, 2);
    const auto limit = limiting_policy(ref, "A");
    CHECK(tv_distance(ref, limit) < 1e-15);
  }
  SUBCASE("zero-mass majority is undefined") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto ref = ab_policy({0.0, 0.0, -inf}, 2);
    CHECK_THROWS_AS(limiting_policy(ref, "B"), std::invalid_argument);
  }
  SUBCASE("long-run majority reweighting converges to the limit") {
    const auto ref = ab_policy({0.1, -0.2, 0.4, -0.5}, 2);
    const std::string maj = greedy_answer(ref);
    auto policy = ref;
    for (int k = 0; k < 200; ++k) {
      std::vector<double> rewards(policy.size());
      for (std::size_t i = 0; i < policy.size(); ++i) {
        rewards[i] = policy.answer_of(i) == maj ? 1.0 : 0.0;
      }
      policy = optimal_policy(policy, rewards, 1.0);
    }
    CHECK(tv_distance(policy, limiting_policy(ref, maj)) <= 1e-6);
  }
}

TEST_CASE("estimator_policy_map") {
  SUBCASE("probability kind with one-hot current") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto ref = ab_policy({0.0, 0.0, 0.0, 0.0}, 2);
    const auto current = ab_policy({0.0, -inf, -inf, -inf}, 2);
    const auto out = estimator_policy_map(ref, current, EstimatorKind::probability, 1.0);
    const auto probs = out.probabilities();
    // trajectory 0 carries factor e^{1/beta}, all others e^0
    const double z = std::exp(1.0) + 3.0;
    CHECK(probs[0] == doctest::Approx(std::exp(1.0) / z).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(1.0 / z).epsilon(1e-12));
  }
  SUBCASE("EMPO reweighting on a 3A/1B uniform table") {
    const auto ref = ab_policy({0.0, 0.0, 0.0, 0.0}, 3);
    const auto current = ref;  // answer masses (0.75, 0.25)
    const auto out = estimator_policy_map(ref, current, EstimatorKind::empo, 1.0);
    const double expected =
        3.0 * std::exp(0.75) / (3.0 * std::exp(0.75) + std::exp(0.25));
    CHECK(answer_mass(out, "A") == doctest::Approx(expected).epsilon(1e-12));
    CHECK(answer_mass(out, "A") == doctest::Approx(0.8318).epsilon(1e-3));
  }
  SUBCASE("constant rewards leave the reference unchanged") {
    // equal lengths and identical step distributions: token-entropy and
    // self-certainty rewards are constant across trajectories
    const auto ref = ab_policy({0.5, -0.1, 0.2, -0.3}, 2);
    const auto current = ab_policy({1.0, 0.3, -0.2, 0.1}, 2);
    for (auto kind : {EstimatorKind::token_entropy, EstimatorKind::self_certainty}) {
      const auto out = estimator_policy_map(ref, current, kind, 1.0);
      CHECK(tv_distance(ref, out) < 1e-14);
    }
  }
  SUBCASE("misaligned spaces throw") {
    const auto ref = ab_policy({0.0, 0.0}, 1);
    const auto other = ab_policy({0.0, 0.0, 0.0}, 2);
    CHECK_THROWS_AS(estimator_policy_map(ref, other, EstimatorKind::probability, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("toy training with majority reward sharpens past 0.98 step by step") {
  // the recurrence's qualitative story under the actual trainer: strictly
  // increasing p_maj at every step and near-complete concentration within
  // a bounded step budget
  const auto problems = generate_problems(2, 8, 3, 4242, 0.35);
  TrainConfig config;
  config.reward_kind = EstimatorKind::majority_voting;
  config.baseline = TrainConfig::Baseline::group_mean;
  config.n_rollouts = 1024;
  config.global_batch = 2;
  config.mini_batch = 2;
  config.learning_rate = 0.5;
  config.steps = 250;
  config.seed = 9;
  const auto trace = train(config, problems);

  CHECK(trace.total_flips == 0);
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    for (std::size_t p = 0; p < 2; ++p) {
      CHECK(trace.steps[k].p_maj[p] > trace.steps[k - 1].p_maj[p]);
    }
  }
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(trace.steps.back().p_maj[p] > 0.98);
  }
}

TEST_CASE("rich-get-richer: the map never shrinks the leader's probability ratios") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng.below(6);
    const std::size_t n_a = 1 + rng.below(n - 1);
    std::vector<double> logits(n);
    for (auto& l : logits) l = 3.0 * rng.unit() - 1.5;
    const double beta = 0.4 + 1.6 * rng.unit();
    const auto current = ab_policy(logits, n_a);
    const auto cur_probs = current.probabilities();

    // sequence-level kinds: the leader is the argmax trajectory
    for (auto kind : {EstimatorKind::trajectory_entropy, EstimatorKind::probability}) {
      const auto out = estimator_policy_map(current, current, kind, beta);
      const auto new_probs = out.probabilities();
      std::size_t star = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (cur_probs[i] > cur_probs[star]) star = i;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == star) continue;
        const double before = cur_probs[star] / cur_probs[i];
        const double after = new_probs[star] / new_probs[i];
        CHECK(after >= before * (1.0 - 1e-12));
      }
    }

    // EMPO: leaders are the trajectories of the dominant answer class
    {
      const auto out = estimator_policy_map(current, current, EstimatorKind::empo, beta);
      const auto new_probs = out.probabilities();
      const std::string maj = greedy_answer(current);
      for (std::size_t i = 0; i < n; ++i) {
        if (current.answer_of(i) != maj) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (current.answer_of(j) == maj) continue;
          const double before = cur_probs[i] / cur_probs[j];
          const double after = new_probs[i] / new_probs[j];
          CHECK(after >= before * (1.0 - 1e-12));
        }
      }
    }

    // token entropy on a confidence-aligned table: trajectories whose step
    // distributions are sharper also carry more policy mass
    {
      std::vector<Trajectory> table;
      std::vector<double> aligned_logits(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double conf = 0.5 + 0.5 * (static_cast<double>(i) + 1.0) / (n + 1.0);
        table.push_back(Trajectory(
            {0}, {ProbabilityVector({conf, 1.0 - conf})}, i < n_a ? "A" : "B"));
        aligned_logits[i] = 2.0 * conf;
      }
      const TabularPolicy aligned(aligned_logits, std::move(table));
      const auto probs = aligned.probabilities();
      const auto out = estimator_policy_map(aligned, aligned, EstimatorKind::token_entropy, beta);
      const auto new_probs = out.probabilities();
      const std::size_t star = n - 1;  // sharpest step distribution = argmax mass
      for (std::size_t i = 0; i + 1 < n; ++i) {
        CHECK(new_probs[star] / new_probs[i] >= probs[star] / probs[i] * (1.0 - 1e-12));
      }
    }
  }
}
