#include "urlvr/countdown.hpp"
#include "urlvr/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdio>
#include <filesystem>

using namespace urlvr::countdown;

TEST_CASE("parse_expression") {
  SUBCASE("precedence") {
    const auto tree = parse_expression("1+2*3");
    REQUIRE(tree.has_value());
    CHECK(eval_expression(*tree) == 7.0);
  }
  SUBCASE("parentheses") {
    const auto tree = parse_expression("(4-2)*5");
    REQUIRE(tree.has_value());
    CHECK(eval_expression(*tree) == 10.0);
  }
  SUBCASE("left associativity") {
    CHECK(eval_expression(*parse_expression("8-3-2")) == 3.0);
    CHECK(eval_expression(*parse_expression("12/2/3")) == 2.0);
  }
  SUBCASE("rejections") {
    CHECK(!parse_expression("x+2").has_value());
    CHECK(!parse_expression("1+2=3").has_value());
    CHECK(!parse_expression("-1+2").has_value());   // unary minus
    CHECK(!parse_expression("1+").has_value());
    CHECK(!parse_expression("(1+2").has_value());
    CHECK(!parse_expression("1 2").has_value());
    CHECK(!parse_expression("").has_value());
    CHECK(!parse_expression("two+2").has_value());
    CHECK(!parse_expression("1+2)").has_value());
  }
  SUBCASE("whitespace is tolerated") {
    CHECK(eval_expression(*parse_expression(" ( 4 - 2 ) * 5 ")) == 10.0);
  }
}

TEST_CASE("eval_expression") {
  // 10/3*3 comes back to 10 within the tolerance
  const auto v = eval_expression(*parse_expression("10/3*3"));
  REQUIRE(v.has_value());
  CHECK(std::abs(*v - 10.0) <= 1e-6);

  // 29/7*7 rounds: near 29 but not equal
  const auto w = eval_expression(*parse_expression("29/7*7"));
  REQUIRE(w.has_value());
  CHECK(std::abs(*w - 29.0) <= 1e-6);
  CHECK(*w != 29.0);

  // division by zero is an evaluation failure
  CHECK(!eval_expression(*parse_expression("1/(2-2)")).has_value());
}

TEST_CASE("verify") {
  const CountdownProblem p123({1, 2, 3}, 7);
  SUBCASE("valid") {
    const auto r = verify("1+2*3", p123);
    CHECK(r.valid);
    CHECK(!r.failed_check.has_value());
    CHECK(r.computed_value == 7.0);
  }
  SUBCASE("unused number fails multiplicity") {
    const auto r = verify("1+2", CountdownProblem({1, 2, 3}, 3));
    CHECK(!r.valid);
    CHECK(r.failed_check == FailedCheck::multiplicity);
  }
  SUBCASE("reuse fails multiplicity") {
    const auto r = verify("2+2*3", CountdownProblem({2, 3, 4}, 8));
    CHECK(!r.valid);
    CHECK(r.failed_check == FailedCheck::multiplicity);
  }
  SUBCASE("foreign number fails membership") {
    const auto r = verify("5+2*3", p123);
    CHECK(!r.valid);
    CHECK(r.failed_check == FailedCheck::membership);
  }
  SUBCASE("parse failure wins over number misuse") {
    const auto r = verify("9+9+", p123);
    CHECK(r.failed_check == FailedCheck::parse);
  }
  SUBCASE("wrong value") {
    const auto r = verify("1+2+3", p123);
    CHECK(!r.valid);
    CHECK(r.failed_check == FailedCheck::value);
    CHECK(r.computed_value == 6.0);
  }
  SUBCASE("division by zero maps to the value check") {
    const auto r = verify("1/(2-2)*3", CountdownProblem({1, 2, 2, 3}, 1));
    CHECK(!r.valid);
    CHECK(r.failed_check == FailedCheck::value);
    CHECK(!r.computed_value.has_value());
  }
  SUBCASE("multiset multiplicity is exact") {
    const CountdownProblem twos({2, 2, 3}, 7);
    CHECK(verify("2*2+3", twos).valid);  // the literal 2 must appear exactly twice
    const auto once = verify("2+3", twos);
    CHECK(once.failed_check == FailedCheck::multiplicity);
    const auto thrice = verify("3*3-2", twos);
    CHECK(thrice.failed_check == FailedCheck::multiplicity);
  }
  SUBCASE("tolerance boundary") {
    const CountdownProblem p({29, 7, 7}, 29);
    CHECK(verify("29/7*7", p).valid);          // within 1e-6
    CHECK(!verify("29/7*7", p, 0.0).valid);    // exact equality fails
  }
}

TEST_CASE("solve") {
  SUBCASE("finds a verifying expression") {
    const CountdownProblem p({1, 2, 3}, 9);
    const auto expr = solve(p);
    REQUIRE(expr.has_value());
    CHECK(verify(*expr, p).valid);
  }
  SUBCASE("proves nonexistence") {
    CHECK(!solve(CountdownProblem({1, 1, 1}, 100)).has_value());
  }
  SUBCASE("four numbers") {
    const CountdownProblem p({3, 5, 7, 11}, 62);
    const auto expr = solve(p);
    REQUIRE(expr.has_value());
    CHECK(verify(*expr, p).valid);
  }
  SUBCASE("deterministic") {
    const CountdownProblem p({2, 4, 6}, 12);
    CHECK(solve(p) == solve(p));
  }
  SUBCASE("problem invariants") {
    CHECK_THROWS_AS(CountdownProblem({2, 2}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CountdownProblem({1, 2, 3, 4, 5}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CountdownProblem({0, 2, 3}, 4), std::invalid_argument);
  }
}

TEST_CASE("verifier_reward_accuracy") {
  std::vector<LabeledCase> cases;
  // three valid, two invalid
  cases.push_back({"1+2*3", CountdownProblem({1, 2, 3}, 7), true});
  cases.push_back({"(4-2)*5", CountdownProblem({2, 4, 5}, 10), true});
  cases.push_back({"29/7*7", CountdownProblem({29, 7, 7}, 29), true});
  cases.push_back({"1+2+3", CountdownProblem({1, 2, 3}, 7), false});
  cases.push_back({"x+2", CountdownProblem({1, 2, 3}, 3), false});

  const CandidateVerifier oracle = [](const std::string& e, const CountdownProblem& p) {
    return verify(e, p).valid;
  };
  CHECK(verifier_reward_accuracy(oracle, cases) == 1.0);

  const CandidateVerifier constant_true = [](const std::string&, const CountdownProblem&) {
    return true;
  };
  CHECK(verifier_reward_accuracy(constant_true, cases) == doctest::Approx(0.6));

  const CandidateVerifier zero_tol = [](const std::string& e, const CountdownProblem& p) {
    return verify(e, p, 0.0).valid;
  };
  // disagrees exactly on the float-rounding case
  CHECK(verifier_reward_accuracy(zero_tol, cases) == doctest::Approx(0.8));

  CHECK_THROWS_AS(verifier_reward_accuracy(oracle, {}), std::invalid_argument);
}

TEST_CASE("case files round-trip") {
  std::vector<LabeledCase> cases;
  cases.push_back({"1+2*3", CountdownProblem({1, 2, 3}, 7), true});
  cases.push_back({"9-8/4", CountdownProblem({9, 8, 4}, 7), true});
  cases.push_back({"bogus", CountdownProblem({1, 1, 5}, 2), false});

  const auto path = std::filesystem::temp_directory_path() / "urlvr_cases_test.jsonl";
  save_cases(path.string(), cases);
  const auto loaded = load_cases(path.string());
  REQUIRE(loaded.size() == cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CHECK(loaded[i].expr == cases[i].expr);
    CHECK(loaded[i].problem.nums == cases[i].problem.nums);
    CHECK(loaded[i].problem.target == cases[i].problem.target);
    CHECK(loaded[i].oracle_valid == cases[i].oracle_valid);
  }
  std::filesystem::remove(path);
}
