#pragma once

// Countdown arithmetic puzzles: a deterministic expression verifier (the
// generation-verification-asymmetry case study), a brute-force solver that
// serves as the ground-truth oracle, and a harness scoring pluggable
// verifiers against that oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace urlvr {
namespace countdown {

/// Multiset of 3-4 positive integers and a target value.
struct CountdownProblem {
  std::vector<std::int64_t> nums;
  std::int64_t target = 0;

  CountdownProblem(std::vector<std::int64_t> nums_in, std::int64_t target_in);
};

/// Binary expression tree over integer literals and {+, -, *, /}. Nodes live
/// in an arena so trees are plain copyable values; the root is the last node.
struct ExpressionTree {
  enum class Op : std::uint8_t { literal, add, sub, mul, div };
  struct Node {
    Op op = Op::literal;
    std::int64_t value = 0;  // literal only
    std::size_t lhs = 0, rhs = 0;
  };
  std::vector<Node> nodes;
  std::string source_text;

  std::size_t root() const { return nodes.size() - 1; }
  void collect_leaves(std::vector<std::int64_t>& out) const;
};

enum class FailedCheck { parse, membership, multiplicity, operators, value };

std::string to_string(FailedCheck check);

struct VerifyResult {
  bool valid = false;
  std::optional<FailedCheck> failed_check;
  std::optional<double> computed_value;
};

/// Standard precedence (* / over + -), left associativity, parentheses,
/// non-negative integer literals only. Rejects equations, variables, words,
/// unary minus. Returns nullopt on any parse failure.
std::optional<ExpressionTree> parse_expression(const std::string& text);

/// Floating evaluation; nullopt on division by zero anywhere in the tree.
std::optional<double> eval_expression(const ExpressionTree& tree);

/// Prompt-ordered checks: parse, membership, multiplicity, operators, value.
/// Valid iff the expression parses, uses exactly the problem's numbers, and
/// evaluates to the target within the tolerance.
VerifyResult verify(const std::string& expr_text, const CountdownProblem& problem,
                    double tolerance = 1e-6);

/// Exhaustive search over operand permutations, operator assignments and
/// binary-tree shapes, in a fixed enumeration order. The first expression
/// that verifies wins; nullopt when none exists.
std::optional<std::string> solve(const CountdownProblem& problem);

/// A pluggable (possibly noisy) verifier under test.
using CandidateVerifier = std::function<bool(const std::string&, const CountdownProblem&)>;

struct LabeledCase {
  std::string expr;
  CountdownProblem problem;
  bool oracle_valid = false;
};

/// Fraction of cases where the candidate's verdict matches the oracle label.
double verifier_reward_accuracy(const CandidateVerifier& candidate,
                                const std::vector<LabeledCase>& cases);

// JSON-lines case files: {"nums": [...], "target": t, "expr": "...", "expected": b}
std::vector<LabeledCase> load_cases(const std::string& path);
void save_cases(const std::string& path, const std::vector<LabeledCase>& cases);

}  // namespace countdown
}  // namespace urlvr
