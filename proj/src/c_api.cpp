#include "urlvr/urlvr.h"

#include "urlvr/countdown.hpp"
#include "urlvr/dynamics.hpp"
#include "urlvr/experiment.hpp"
#include "urlvr/policy.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

struct urlvr_policy {
  urlvr::Problem problem;
};

struct urlvr_trace {
  urlvr::SimulationTrace trace;
};

namespace {

void set_error(char* err, size_t err_len, const std::string& message) {
  if (!err || err_len == 0) return;
  const size_t n = std::min(err_len - 1, message.size());
  std::memcpy(err, message.data(), n);
  err[n] = '\0';
}

// Every entry point funnels through here so exceptions map uniformly onto
// status codes: invalid_argument -> INVALID_ARGUMENT, ConfigError -> PARSE,
// anything else -> RUNTIME.
template <typename Fn>
urlvr_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    fn();
    return URLVR_OK;
  } catch (const urlvr::ConfigError& e) {
    set_error(err, err_len, e.what());
    return URLVR_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(err, err_len, e.what());
    return URLVR_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(err, err_len, e.what());
    return URLVR_ERR_RUNTIME;
  }
}

urlvr_status require(bool ok, const char* what, char* err, size_t err_len) {
  if (ok) return URLVR_OK;
  set_error(err, err_len, what);
  return URLVR_ERR_INVALID_ARGUMENT;
}

urlvr_status copy_string(const std::string& s, char* buf, size_t buf_len, char* err,
                         size_t err_len) {
  if (!buf || buf_len <= s.size()) {
    set_error(err, err_len, "output buffer too small");
    return URLVR_ERR_INVALID_ARGUMENT;
  }
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  return URLVR_OK;
}

}  // namespace

extern "C" {

const char* urlvr_version(void) { return "0.1.0"; }

urlvr_status urlvr_policy_load(const char* path, urlvr_policy** out, char* err, size_t err_len) {
  if (auto rc = require(path && out, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] {
    auto problems = urlvr::load_problems(path);
    *out = new urlvr_policy{std::move(problems.front())};
  });
}

urlvr_status urlvr_policy_parse(const char* text, urlvr_policy** out, char* err, size_t err_len) {
  if (auto rc = require(text && out, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] {
    std::istringstream is{std::string(text)};
    auto problem = urlvr::read_space(is);
    if (!problem) throw urlvr::ConfigError("empty space text");
    *out = new urlvr_policy{std::move(*problem)};
  });
}

void urlvr_policy_free(urlvr_policy* policy) { delete policy; }

urlvr_status urlvr_policy_size(const urlvr_policy* policy, size_t* out, char* err,
                               size_t err_len) {
  if (auto rc = require(policy && out, "null argument", err, err_len)) return rc;
  *out = policy->problem.policy.size();
  return URLVR_OK;
}

urlvr_status urlvr_policy_answer_mass(const urlvr_policy* policy, const char* answer, double* out,
                                      char* err, size_t err_len) {
  if (auto rc = require(policy && answer && out, "null argument", err, err_len)) return rc;
  return guarded(err, err_len,
                 [&] { *out = urlvr::answer_mass(policy->problem.policy, answer); });
}

urlvr_status urlvr_policy_greedy_answer(const urlvr_policy* policy, char* buf, size_t buf_len,
                                        char* err, size_t err_len) {
  if (auto rc = require(policy && buf, "null argument", err, err_len)) return rc;
  urlvr_status rc = URLVR_OK;
  auto guard_rc = guarded(err, err_len, [&] {
    rc = copy_string(urlvr::greedy_answer(policy->problem.policy), buf, buf_len, err, err_len);
  });
  return guard_rc != URLVR_OK ? guard_rc : rc;
}

urlvr_status urlvr_p_maj_star(double p, double beta, double* out, char* err, size_t err_len) {
  if (auto rc = require(out != nullptr, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] { *out = urlvr::p_maj_star(p, beta); });
}

urlvr_status urlvr_simulate(double p0, double beta, double eta, size_t steps, urlvr_trace** out,
                            char* err, size_t err_len) {
  if (auto rc = require(out != nullptr, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] {
    const auto params = urlvr::DynamicsParams::create(beta, eta);
    *out = new urlvr_trace{urlvr::simulate_recurrence(p0, params, steps)};
  });
}

void urlvr_trace_free(urlvr_trace* trace) { delete trace; }

urlvr_status urlvr_trace_size(const urlvr_trace* trace, size_t* out, char* err, size_t err_len) {
  if (auto rc = require(trace && out, "null argument", err, err_len)) return rc;
  *out = trace->trace.states.size();
  return URLVR_OK;
}

urlvr_status urlvr_trace_row(const urlvr_trace* trace, size_t row, size_t* iteration,
                             double* p_maj, double* epsilon, char* err, size_t err_len) {
  if (auto rc = require(trace != nullptr, "null argument", err, err_len)) return rc;
  if (row >= trace->trace.states.size()) {
    set_error(err, err_len, "trace row out of range");
    return URLVR_ERR_INVALID_ARGUMENT;
  }
  const auto& state = trace->trace.states[row];
  if (iteration) *iteration = state.iteration;
  if (p_maj) *p_maj = state.p_maj;
  if (epsilon) *epsilon = state.epsilon;
  return URLVR_OK;
}

urlvr_status urlvr_countdown_verify(const char* expr, const int64_t* nums, size_t n_nums,
                                    int64_t target, double tolerance, int* valid,
                                    int* failed_check, double* computed_value, char* err,
                                    size_t err_len) {
  if (auto rc = require(expr && nums && valid, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] {
    const urlvr::countdown::CountdownProblem problem(
        std::vector<int64_t>(nums, nums + n_nums), target);
    const auto result = urlvr::countdown::verify(expr, problem, tolerance);
    *valid = result.valid ? 1 : 0;
    if (failed_check) {
      *failed_check = result.failed_check ? static_cast<int>(*result.failed_check) + 1 : 0;
    }
    if (computed_value) {
      *computed_value = result.computed_value ? *result.computed_value : std::nan("");
    }
  });
}

urlvr_status urlvr_countdown_solve(const int64_t* nums, size_t n_nums, int64_t target, char* buf,
                                   size_t buf_len, int* found, char* err, size_t err_len) {
  if (auto rc = require(nums && buf && found, "null argument", err, err_len)) return rc;
  urlvr_status rc = URLVR_OK;
  auto guard_rc = guarded(err, err_len, [&] {
    const urlvr::countdown::CountdownProblem problem(
        std::vector<int64_t>(nums, nums + n_nums), target);
    const auto expr = urlvr::countdown::solve(problem);
    *found = expr ? 1 : 0;
    rc = copy_string(expr ? *expr : std::string(), buf, buf_len, err, err_len);
  });
  return guard_rc != URLVR_OK ? guard_rc : rc;
}

urlvr_status urlvr_validate_config(const char* path, char* err, size_t err_len) {
  if (auto rc = require(path != nullptr, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] { urlvr::load_config(path); });
}

urlvr_status urlvr_run_config(const char* path, char* err, size_t err_len) {
  if (auto rc = require(path != nullptr, "null argument", err, err_len)) return rc;
  return guarded(err, err_len, [&] { urlvr::run_experiment_file(path); });
}

}  // extern "C"
