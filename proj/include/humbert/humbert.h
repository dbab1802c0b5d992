/*
 * C interface to the humbert library: Humbert's confluent double
 * hypergeometric functions Phi2, Phi3 and Psi2, their alternative series
 * representations, an exact-rational identity checker and a grid
 * verification harness.
 *
 * Conventions: every fallible call returns a humb_status. Detailed messages
 * for the last failure are kept per context (humb_context_last_error).
 * Objects returned through out-parameters are owned by the caller and are
 * released with the matching *_free function. Strings returned by accessor
 * functions are owned by the object they came from.
 *
 * All evaluation functions are reentrant. A context must not be shared
 * between threads without external locking, because it stores the last
 * error message.
 */
#ifndef HUMBERT_HUMBERT_H
#define HUMBERT_HUMBERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(HUMB_BUILDING_LIBRARY)
#define HUMB_API __attribute__((visibility("default")))
#else
#define HUMB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum humb_status {
  HUMB_OK = 0,
  HUMB_ERR_INVALID_PARAMETER = 1,
  HUMB_ERR_DOMAIN = 2,
  HUMB_ERR_NOT_CONVERGED = 3,
  HUMB_ERR_CONFIG = 4,
  HUMB_ERR_CAP_EXCEEDED = 5,
  HUMB_ERR_IO = 6,
  HUMB_ERR_NULL_ARGUMENT = 7,
  HUMB_ERR_INTERNAL = 8
} humb_status;

typedef enum humb_function { HUMB_PHI2 = 0, HUMB_PHI3 = 1, HUMB_PSI2 = 2 } humb_function;

typedef enum humb_method {
  HUMB_METHOD_DIRECT = 0,
  HUMB_METHOD_SERIES2F1 = 1,
  HUMB_METHOD_PHI3SHIFT = 2,
  HUMB_METHOD_DIAG2F2 = 3,
  HUMB_METHOD_EQUALARGS3F3 = 4,
  HUMB_METHOD_GAUSSTERMS = 5
} humb_method;

typedef enum humb_identity {
  HUMB_ID_EQ13 = 0,
  HUMB_ID_EQ14 = 1,
  HUMB_ID_EQ15 = 2,
  HUMB_ID_EQ15_PRINTED = 3,
  HUMB_ID_EQ16 = 4,
  HUMB_ID_EQ33 = 5,
  HUMB_ID_EQ34 = 6,
  HUMB_ID_BC3F3 = 7
} humb_identity;

typedef enum humb_side { HUMB_LHS = 0, HUMB_RHS = 1 } humb_side;

typedef struct humb_complex {
  double re;
  double im;
} humb_complex;

typedef struct humb_outcome {
  humb_complex value;
  uint32_t terms;
  double est_error;
  double condition;
  int converged;
} humb_outcome;

typedef struct humb_summary {
  size_t total;
  size_t pass;
  size_t fail;
  size_t skipped;
  double max_rel_err;
  /* Index of the worst PASS/FAIL record, or -1 when there is none. */
  int64_t argmax_index;
} humb_summary;

typedef struct humb_context humb_context;
typedef struct humb_certificate humb_certificate;
typedef struct humb_table humb_table;
typedef struct humb_report humb_report;

/* ---- context ---------------------------------------------------------- */

HUMB_API humb_context* humb_context_new(void);
HUMB_API void humb_context_free(humb_context* ctx);
/* Defaults: rel_tol 1e-14, max_terms 5000, small_run 3. */
HUMB_API humb_status humb_context_set_control(humb_context* ctx, double rel_tol,
                                              uint32_t max_terms, uint32_t small_run);
HUMB_API humb_status humb_context_get_control(const humb_context* ctx, double* rel_tol,
                                              uint32_t* max_terms, uint32_t* small_run);
/* Message for the most recent failure on this context; "" if none. */
HUMB_API const char* humb_context_last_error(const humb_context* ctx);
HUMB_API const char* humb_status_name(humb_status status);

/* ---- scalar kernels ----------------------------------------------------- */

HUMB_API humb_complex humb_pochhammer(humb_complex a, uint32_t n);
HUMB_API humb_status humb_pfq(humb_context* ctx, const humb_complex* upper, size_t n_upper,
                              const humb_complex* lower, size_t n_lower, humb_complex z,
                              humb_outcome* out);
HUMB_API humb_status humb_hyp2f1_terminating(humb_context* ctx, uint32_t k, humb_complex beta,
                                             humb_complex gamma, humb_complex z,
                                             humb_complex* out);
HUMB_API humb_status humb_gauss_2f1_unit(humb_context* ctx, humb_complex a, humb_complex b,
                                         humb_complex c, humb_complex* out);

/* ---- Humbert functions -------------------------------------------------- */

/*
 * Evaluates `fn` at (x, y) with `method`. params = {a, b, c}; a is ignored
 * for Phi3. Returns HUMB_ERR_NOT_CONVERGED with *out filled when the series
 * hit max_terms.
 */
HUMB_API humb_status humb_evaluate(humb_context* ctx, humb_function fn, humb_method method,
                                   const humb_complex params[3], humb_complex x, humb_complex y,
                                   humb_outcome* out);
HUMB_API humb_status humb_function_from_name(const char* name, humb_function* out);
HUMB_API humb_status humb_method_from_name(const char* name, humb_method* out);
HUMB_API const char* humb_function_name(humb_function fn);
HUMB_API const char* humb_method_name(humb_method method);

/* ---- exact-rational identity oracle ------------------------------------- */

HUMB_API size_t humb_identity_count(void);
/* Fields of the i-th identity; any out pointer may be NULL. */
HUMB_API humb_status humb_identity_describe(size_t i, humb_identity* id, const char** key,
                                            const char** equation, const char** statement,
                                            const char** correction, const char** params);
HUMB_API humb_status humb_identity_from_key(const char* key, humb_identity* out);

/* params: "a=1/2,b=3,c=5/2" (names required by the identity). */
HUMB_API humb_status humb_oracle_compare(humb_context* ctx, humb_identity id, const char* params,
                                         uint32_t max_deg_x, uint32_t max_deg_t,
                                         humb_certificate** out);
HUMB_API int humb_certificate_equal(const humb_certificate* cert);
HUMB_API const char* humb_certificate_json(const humb_certificate* cert);
HUMB_API void humb_certificate_free(humb_certificate* cert);

HUMB_API humb_status humb_oracle_expand(humb_context* ctx, humb_identity id, humb_side side,
                                        const char* params, uint32_t max_deg_x,
                                        uint32_t max_deg_t, humb_table** out);
/* Coefficient of x^i t^j as "p/q" (or "p"); NULL if out of range. */
HUMB_API const char* humb_table_coeff(const humb_table* table, uint32_t i, uint32_t j);
HUMB_API const char* humb_table_json(const humb_table* table);
HUMB_API void humb_table_free(humb_table* table);

/* ---- grid verification -------------------------------------------------- */

/* threads = 0 uses the hardware concurrency. */
HUMB_API humb_status humb_verify_run(humb_context* ctx, const char* spec_json, unsigned threads,
                                     humb_report** out);
HUMB_API humb_status humb_verify_run_file(humb_context* ctx, const char* path, unsigned threads,
                                          humb_report** out);
HUMB_API humb_status humb_report_summary(const humb_report* report, humb_summary* out);
HUMB_API const char* humb_report_json(const humb_report* report);
HUMB_API const char* humb_report_csv(const humb_report* report);
HUMB_API void humb_report_free(humb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* HUMBERT_HUMBERT_H */
