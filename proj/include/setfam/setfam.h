/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to libsetfam.
 *
 * Every call returns a setfam_status. On failure the message is available
 * from setfam_last_error() on the calling thread until its next call.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with setfam_string_free(). Function handles are immutable once
 * created and may be shared between threads.
 *
 * Points are passed as 64-bit integers: coordinate i (1-based) is bit i-1.
 */
#ifndef SETFAM_SETFAM_H
#define SETFAM_SETFAM_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(SETFAM_BUILDING)
#define SETFAM_API __declspec(dllexport)
#else
#define SETFAM_API __declspec(dllimport)
#endif
#else
#define SETFAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum setfam_status {
  SETFAM_OK = 0,
  SETFAM_INVALID_ARGUMENT = 1,
  SETFAM_RESOURCE_LIMIT = 2,
  SETFAM_PARSE_ERROR = 3,
  SETFAM_IO_ERROR = 4,
  SETFAM_INTERNAL_ERROR = 5
} setfam_status;

typedef struct setfam_function setfam_function;

SETFAM_API const char* setfam_version(void);
SETFAM_API const char* setfam_status_name(setfam_status status);
SETFAM_API const char* setfam_last_error(void);
SETFAM_API void setfam_string_free(char* text);

/* ---- Functions ---------------------------------------------------------- */

/*
 * Built-in functions of arity n: "const0", "const1", "dictator-<k>",
 * "majority", or "ones:{i,j,...}" whose 1-inputs are listed as bit strings
 * x_1...x_n (e.g. "ones:{01,10}") or as decimal indices.
 */
SETFAM_API setfam_status setfam_function_builtin(const char* name, int n, setfam_function** out);

/* Truth table from a BFTT1 or {"n", "ones"} JSON file. */
SETFAM_API setfam_status setfam_function_load(const char* path, setfam_function** out);

/*
 * Hard instance. kind is one of "talagrand", "int-yes", "int-no",
 * "int-one-sided-no", "uc-yes", "uc-no".
 */
SETFAM_API setfam_status setfam_function_instance(const char* kind, int n, double eps,
                                                  uint64_t seed, setfam_function** out);

/* Regenerates an instance from its JSON document. */
SETFAM_API setfam_status setfam_function_instance_json(const char* json, setfam_function** out);

/* truncate_uc (uc != 0) or truncate_int of f. */
SETFAM_API setfam_status setfam_function_truncate(const setfam_function* f, int uc, double eps,
                                                  setfam_function** out);

SETFAM_API void setfam_function_free(setfam_function* f);

SETFAM_API int setfam_function_arity(const setfam_function* f);

SETFAM_API setfam_status setfam_function_eval(const setfam_function* f, uint64_t point, int* out);

/*
 * JSON description: {"source": ...}; instances add the regenerating spec and
 * their hidden randomness.
 */
SETFAM_API setfam_status setfam_function_describe(const setfam_function* f, char** json_out);

/* Writes the BFTT1 materialization (arity <= 24). */
SETFAM_API setfam_status setfam_function_write_bftt1(const setfam_function* f, const char* path);

/*
 * Exact property checks on the materialized table (arity <= 24):
 * {"n", "ones", "union_closed", "intersecting"}.
 */
SETFAM_API setfam_status setfam_function_check(const setfam_function* f, char** json_out);

/* ---- Testers ------------------------------------------------------------ */

typedef struct setfam_tester_config {
  double eps;
  uint64_t seed;
  /* 0 keeps the algorithm's default iteration / round count. */
  uint64_t max_iterations;
  /* 0 keeps the default cap of 2^28 enumerated points. */
  uint64_t enumeration_cap;
  double tau_constant;
  int run_all_rounds;
} setfam_tester_config;

SETFAM_API void setfam_tester_config_init(setfam_tester_config* cfg);

/*
 * algorithm is "uc", "int", "uc-triple" or "int-pair". The report JSON holds
 * verdict, certificate, queries, iterations_run, iterations_planned,
 * successes and seed.
 */
SETFAM_API setfam_status setfam_run_tester(const setfam_function* f, const char* algorithm,
                                           const setfam_tester_config* cfg, char** json_out);

/* Re-reads f on every point of a certificate in the report's JSON form. */
SETFAM_API setfam_status setfam_verify_certificate(const setfam_function* f,
                                                   const char* certificate_json, int* valid);

/* ---- Distance ----------------------------------------------------------- */

/*
 * property is "int" or "uc"; method is "auto", "exact" or "bounds".
 * Values are exact fractions over 2^n, e.g. {"value": "2/4", ...}.
 */
SETFAM_API setfam_status setfam_distance(const setfam_function* f, const char* property,
                                         const char* method, char** json_out);

/* ---- Experiments -------------------------------------------------------- */

/* Violation counts for int-no / uc-no instances (and zero for yes kinds). */
SETFAM_API setfam_status setfam_count_violations(const setfam_function* instance, char** json_out);

SETFAM_API setfam_status setfam_unique_sat(int n, double eps, uint64_t trials, uint64_t seed,
                                           char** json_out);

/*
 * kind is "intersect" or "union-closed"; queries is a JSON array of point
 * indices of arity n.
 */
SETFAM_API setfam_status setfam_bad_event(const char* kind, const char* queries_json, int n,
                                          double eps, uint64_t trials, uint64_t seed,
                                          char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SETFAM_SETFAM_H */
