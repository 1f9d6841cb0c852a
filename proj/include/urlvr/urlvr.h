#ifndef URLVR_H
#define URLVR_H

/*
 * C API for the urlvr lab core. All functions return a urlvr_status; any
 * failure writes a NUL-terminated diagnostic into the caller's error buffer
 * (when provided). Objects returned through out-parameters are owned by the
 * caller and released with the matching _free function. Handles are opaque;
 * every operation on them is thread-safe for distinct handles.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define URLVR_API __declspec(dllexport)
#else
#define URLVR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum urlvr_status {
  URLVR_OK = 0,
  URLVR_ERR_INVALID_ARGUMENT = 1,
  URLVR_ERR_PARSE = 2,   /* config or input file failed to parse */
  URLVR_ERR_RUNTIME = 3, /* invariant violation or I/O failure at run time */
} urlvr_status;

/* Tabular policy plus its answer space, loaded from the space format. */
typedef struct urlvr_policy urlvr_policy;

/* A dynamics trace: rows of (iteration, p_maj, epsilon). */
typedef struct urlvr_trace urlvr_trace;

URLVR_API const char* urlvr_version(void);

/* ---- policies ---------------------------------------------------------- */

URLVR_API urlvr_status urlvr_policy_load(const char* path, urlvr_policy** out,
                                         char* err, size_t err_len);
URLVR_API urlvr_status urlvr_policy_parse(const char* text, urlvr_policy** out,
                                          char* err, size_t err_len);
URLVR_API void urlvr_policy_free(urlvr_policy* policy);

URLVR_API urlvr_status urlvr_policy_size(const urlvr_policy* policy, size_t* out,
                                         char* err, size_t err_len);
URLVR_API urlvr_status urlvr_policy_answer_mass(const urlvr_policy* policy, const char* answer,
                                                double* out, char* err, size_t err_len);
/* Copies the greedy answer into buf (NUL-terminated). */
URLVR_API urlvr_status urlvr_policy_greedy_answer(const urlvr_policy* policy, char* buf,
                                                  size_t buf_len, char* err, size_t err_len);

/* ---- sharpening dynamics ----------------------------------------------- */

URLVR_API urlvr_status urlvr_p_maj_star(double p, double beta, double* out,
                                        char* err, size_t err_len);

/* Simulates `steps` applications of the effective update with a constant
 * step efficiency eta. */
URLVR_API urlvr_status urlvr_simulate(double p0, double beta, double eta, size_t steps,
                                      urlvr_trace** out, char* err, size_t err_len);
URLVR_API void urlvr_trace_free(urlvr_trace* trace);
URLVR_API urlvr_status urlvr_trace_size(const urlvr_trace* trace, size_t* out,
                                        char* err, size_t err_len);
URLVR_API urlvr_status urlvr_trace_row(const urlvr_trace* trace, size_t row, size_t* iteration,
                                       double* p_maj, double* epsilon, char* err, size_t err_len);

/* ---- countdown ---------------------------------------------------------- */

/* failed_check out-codes: 0 none, 1 parse, 2 membership, 3 multiplicity,
 * 4 operators, 5 value. computed_value is NaN when unavailable. */
URLVR_API urlvr_status urlvr_countdown_verify(const char* expr, const int64_t* nums, size_t n_nums,
                                              int64_t target, double tolerance, int* valid,
                                              int* failed_check, double* computed_value,
                                              char* err, size_t err_len);

/* found receives 1 and buf the expression when a solution exists, else 0. */
URLVR_API urlvr_status urlvr_countdown_solve(const int64_t* nums, size_t n_nums, int64_t target,
                                             char* buf, size_t buf_len, int* found,
                                             char* err, size_t err_len);

/* ---- experiment runner --------------------------------------------------
 * These mirror the CLI:  run = validate + execute, writing trace.csv,
 * summary.txt and optional plot.svg under the configured output directory
 * (URLVR_LAB_OUT overrides it). Status codes map onto the CLI exit codes. */

URLVR_API urlvr_status urlvr_validate_config(const char* path, char* err, size_t err_len);
URLVR_API urlvr_status urlvr_run_config(const char* path, char* err, size_t err_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* URLVR_H */
