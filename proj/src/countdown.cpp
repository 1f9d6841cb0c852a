#include "urlvr/countdown.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace urlvr {
namespace countdown {

CountdownProblem::CountdownProblem(std::vector<std::int64_t> nums_in, std::int64_t target_in)
    : nums(std::move(nums_in)), target(target_in) {
  if (nums.size() < 3 || nums.size() > 4) {
    throw std::invalid_argument("CountdownProblem: need 3 or 4 numbers");
  }
  for (auto v : nums) {
    if (v < 1) throw std::invalid_argument("CountdownProblem: numbers must be positive");
  }
}

void ExpressionTree::collect_leaves(std::vector<std::int64_t>& out) const {
  for (const auto& node : nodes) {
    if (node.op == Op::literal) out.push_back(node.value);
  }
}

std::string to_string(FailedCheck check) {
  switch (check) {
    case FailedCheck::parse: return "parse";
    case FailedCheck::membership: return "membership";
    case FailedCheck::multiplicity: return "multiplicity";
    case FailedCheck::operators: return "operators";
    case FailedCheck::value: return "value";
  }
  return "?";
}

namespace {

// Recursive-descent parser.
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := integer | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  std::optional<ExpressionTree> parse() {
    ExpressionTree tree;
    tree.source_text = text_;
    if (!parse_expr(tree)) return std::nullopt;
    skip_spaces();
    if (pos_ != text_.size()) return std::nullopt;  // trailing junk, '=', words, ...
    return tree;
  }

 private:
  void skip_spaces() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::optional<char> peek() {
    skip_spaces();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  bool parse_expr(ExpressionTree& tree) {
    if (!parse_term(tree)) return false;
    while (auto c = peek()) {
      if (*c != '+' && *c != '-') break;
      ++pos_;
      const std::size_t lhs = tree.root();
      if (!parse_term(tree)) return false;
      const std::size_t rhs = tree.root();
      tree.nodes.push_back({*c == '+' ? ExpressionTree::Op::add : ExpressionTree::Op::sub, 0, lhs, rhs});
    }
    return true;
  }

  bool parse_term(ExpressionTree& tree) {
    if (!parse_factor(tree)) return false;
    while (auto c = peek()) {
      if (*c != '*' && *c != '/') break;
      ++pos_;
      const std::size_t lhs = tree.root();
      if (!parse_factor(tree)) return false;
      const std::size_t rhs = tree.root();
      tree.nodes.push_back({*c == '*' ? ExpressionTree::Op::mul : ExpressionTree::Op::div, 0, lhs, rhs});
    }
    return true;
  }

  bool parse_factor(ExpressionTree& tree) {
    const auto c = peek();
    if (!c) return false;
    if (*c == '(') {
      ++pos_;
      if (!parse_expr(tree)) return false;
      if (auto close = peek(); close && *close == ')') {
        ++pos_;
        return true;
      }
      return false;
    }
    if (std::isdigit(static_cast<unsigned char>(*c))) {
      std::int64_t value = 0;
      bool any = false;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const int digit = text_[pos_] - '0';
        if (value > (INT64_MAX - digit) / 10) return false;  // overflow
        value = value * 10 + digit;
        ++pos_;
        any = true;
      }
      tree.nodes.push_back({ExpressionTree::Op::literal, value, 0, 0});
      return any;
    }
    return false;  // unary minus, variables, words, anything else
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::optional<double> eval_node(const ExpressionTree& tree, std::size_t idx) {
  const auto& node = tree.nodes[idx];
  if (node.op == ExpressionTree::Op::literal) return static_cast<double>(node.value);
  const auto lhs = eval_node(tree, node.lhs);
  const auto rhs = eval_node(tree, node.rhs);
  if (!lhs || !rhs) return std::nullopt;
  switch (node.op) {
    case ExpressionTree::Op::add: return *lhs + *rhs;
    case ExpressionTree::Op::sub: return *lhs - *rhs;
    case ExpressionTree::Op::mul: return *lhs * *rhs;
    case ExpressionTree::Op::div:
      if (*rhs == 0.0) return std::nullopt;
      return *lhs / *rhs;
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<ExpressionTree> parse_expression(const std::string& text) {
  return Parser(text).parse();
}

std::optional<double> eval_expression(const ExpressionTree& tree) {
  if (tree.nodes.empty()) return std::nullopt;
  return eval_node(tree, tree.root());
}

VerifyResult verify(const std::string& expr_text, const CountdownProblem& problem,
                    double tolerance) {
  VerifyResult result;

  const auto tree = parse_expression(expr_text);
  if (!tree) {
    result.failed_check = FailedCheck::parse;
    return result;
  }

  std::vector<std::int64_t> leaves;
  tree->collect_leaves(leaves);

  std::map<std::int64_t, int> wanted;
  for (auto v : problem.nums) ++wanted[v];

  for (auto leaf : leaves) {
    if (!wanted.count(leaf)) {
      result.failed_check = FailedCheck::membership;
      return result;
    }
  }

  std::map<std::int64_t, int> used;
  for (auto leaf : leaves) ++used[leaf];
  if (used != wanted) {
    result.failed_check = FailedCheck::multiplicity;
    return result;
  }

  // Check 4 (operators) cannot fail past this point: the grammar only admits
  // +, -, *, / and parentheses.

  const auto value = eval_expression(*tree);
  if (!value) {  // division by zero
    result.failed_check = FailedCheck::value;
    return result;
  }
  result.computed_value = *value;
  if (std::abs(*value - static_cast<double>(problem.target)) > tolerance) {
    result.failed_check = FailedCheck::value;
    return result;
  }
  result.valid = true;
  return result;
}

namespace {

// Binary tree shapes over n leaves, encoded as split positions; rendered
// fully parenthesized. Enumeration order is fixed so solve is deterministic.
struct ShapeEval {
  const std::vector<std::int64_t>& operands;
  const std::vector<char>& ops;  // n-1 operators, in-order

  // Evaluates the subtree over leaves [lo, hi) with the given shape choice
  // sequence; shape is selected by recursive splits in lexicographic order.
  std::optional<double> eval(std::size_t lo, std::size_t hi,
                             const std::vector<std::size_t>& splits, std::size_t& cursor,
                             std::string* text) const {
    if (hi - lo == 1) {
      if (text) *text += std::to_string(operands[lo]);
      return static_cast<double>(operands[lo]);
    }
    const std::size_t split = splits[cursor++];  // split after leaf index lo+split
    if (text) *text += '(';
    const auto lhs = eval(lo, lo + split, splits, cursor, text);
    if (text) *text += ops[lo + split - 1];
    const auto rhs = eval(lo + split, hi, splits, cursor, text);
    if (text) *text += ')';
    if (!lhs || !rhs) return std::nullopt;
    switch (ops[lo + split - 1]) {
      case '+': return *lhs + *rhs;
      case '-': return *lhs - *rhs;
      case '*': return *lhs * *rhs;
      default:
        if (*rhs == 0.0) return std::nullopt;
        return *lhs / *rhs;
    }
  }
};

// All split sequences for [lo, hi); each sequence drives one tree shape.
void enumerate_splits(std::size_t lo, std::size_t hi, std::vector<std::size_t>& current,
                      std::vector<std::vector<std::size_t>>& out) {
  if (hi - lo == 1) {
    out.push_back(current);
    return;
  }
  for (std::size_t split = 1; split < hi - lo; ++split) {
    current.push_back(split);
    const std::size_t mark = current.size();
    // left subtree splits, then right subtree splits
    std::vector<std::vector<std::size_t>> partial;
    std::vector<std::size_t> left_current;
    enumerate_splits(lo, lo + split, left_current, partial);
    for (const auto& left : partial) {
      current.insert(current.end(), left.begin(), left.end());
      std::vector<std::vector<std::size_t>> rights;
      std::vector<std::size_t> right_current;
      enumerate_splits(lo + split, hi, right_current, rights);
      for (const auto& right : rights) {
        current.insert(current.end(), right.begin(), right.end());
        out.push_back(current);
        current.resize(current.size() - right.size());
      }
      current.resize(mark);
    }
    current.pop_back();
  }
}

}  // namespace

std::optional<std::string> solve(const CountdownProblem& problem) {
  std::vector<std::int64_t> operands = problem.nums;
  std::sort(operands.begin(), operands.end());

  const std::size_t n = operands.size();
  std::vector<std::vector<std::size_t>> shapes;
  {
    std::vector<std::size_t> current;
    enumerate_splits(0, n, current, shapes);
  }
  static constexpr char kOps[] = {'+', '-', '*', '/'};
  const double target = static_cast<double>(problem.target);

  do {
    std::vector<char> ops(n - 1, '+');
    std::vector<std::size_t> op_choice(n - 1, 0);
    while (true) {
      for (std::size_t i = 0; i < n - 1; ++i) ops[i] = kOps[op_choice[i]];
      for (const auto& splits : shapes) {
        std::size_t cursor = 0;
        const ShapeEval eval{operands, ops};
        const auto value = eval.eval(0, n, splits, cursor, nullptr);
        if (value && std::abs(*value - target) <= 1e-6) {
          std::string text;
          cursor = 0;
          eval.eval(0, n, splits, cursor, &text);
          if (verify(text, problem).valid) return text;
        }
      }
      // next operator assignment
      std::size_t i = 0;
      while (i < n - 1 && op_choice[i] == 3) {
        op_choice[i] = 0;
        ++i;
      }
      if (i == n - 1) break;
      ++op_choice[i];
    }
  } while (std::next_permutation(operands.begin(), operands.end()));

  return std::nullopt;
}

double verifier_reward_accuracy(const CandidateVerifier& candidate,
                                const std::vector<LabeledCase>& cases) {
  if (cases.empty()) throw std::invalid_argument("verifier_reward_accuracy: empty case list");
  std::size_t hits = 0;
  for (const auto& c : cases) {
    if (candidate(c.expr, c.problem) == c.oracle_valid) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(cases.size());
}

std::vector<LabeledCase> load_cases(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open case file: " + path);
  std::vector<LabeledCase> cases;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    cases.push_back(LabeledCase{
        j.at("expr").get<std::string>(),
        CountdownProblem(j.at("nums").get<std::vector<std::int64_t>>(),
                         j.at("target").get<std::int64_t>()),
        j.at("expected").get<bool>()});
  }
  if (cases.empty()) throw std::runtime_error("no cases in file: " + path);
  return cases;
}

void save_cases(const std::string& path, const std::vector<LabeledCase>& cases) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write case file: " + path);
  for (const auto& c : cases) {
    nlohmann::json j;
    j["nums"] = c.problem.nums;
    j["target"] = c.problem.target;
    j["expr"] = c.expr;
    j["expected"] = c.oracle_valid;
    os << j.dump() << '\n';
  }
}

}  // namespace countdown
}  // namespace urlvr
