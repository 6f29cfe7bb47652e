/*
 * C interface to libredyn: reduced dynamics of bipartite quantum systems with
 * initially correlated states, and the Kraus-compatibility analysis.
 *
 * All objects are opaque handles created by redyn_* functions and released by
 * the matching *_destroy call. Every fallible call returns a redyn_status; on
 * failure redyn_last_error() describes the problem (per thread). Output
 * handles are written only on success.
 *
 * Generator indices are 0-based. Matrices are square and exchanged as
 * row-major arrays of interleaved (re, im) doubles of length 2 * dim * dim.
 */
#ifndef REDYN_REDYN_H_
#define REDYN_REDYN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define REDYN_API __declspec(dllexport)
#else
#define REDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum redyn_status {
  REDYN_OK = 0,
  REDYN_ERR_INVALID_ARGUMENT = 1,
  REDYN_ERR_DIMENSION = 2,
  REDYN_ERR_NOT_HERMITIAN = 3,
  REDYN_ERR_NOT_UNITARY = 4,
  REDYN_ERR_INVALID_STATE = 5,
  REDYN_ERR_PARSE = 6,
  REDYN_ERR_IO = 7,
  REDYN_ERR_INTERNAL = 8
} redyn_status;

typedef enum redyn_conclusion {
  REDYN_LOCAL_UNITARY = 0,
  REDYN_KRAUS_INCOMPATIBLE = 1
} redyn_conclusion;

typedef struct redyn_matrix redyn_matrix;
typedef struct redyn_basis redyn_basis;
typedef struct redyn_report redyn_report;
typedef struct redyn_model redyn_model;
typedef struct redyn_run redyn_run;

REDYN_API const char* redyn_last_error(void);
REDYN_API const char* redyn_status_string(redyn_status status);
REDYN_API const char* redyn_version(void);

/* Strings returned by *_json functions are owned by the caller. */
REDYN_API void redyn_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

REDYN_API redyn_status redyn_matrix_zeros(size_t dim, redyn_matrix** out);
REDYN_API redyn_status redyn_matrix_from_interleaved(size_t dim, const double* re_im,
                                                     redyn_matrix** out);
REDYN_API void redyn_matrix_destroy(redyn_matrix* m);
REDYN_API size_t redyn_matrix_dim(const redyn_matrix* m);
REDYN_API redyn_status redyn_matrix_get(const redyn_matrix* m, size_t row, size_t col,
                                        double* re, double* im);
REDYN_API redyn_status redyn_matrix_set(redyn_matrix* m, size_t row, size_t col,
                                        double re, double im);
/* Copies 2 * dim * dim doubles into buf; len is the buffer length in doubles. */
REDYN_API redyn_status redyn_matrix_to_interleaved(const redyn_matrix* m, double* buf,
                                                   size_t len);
REDYN_API redyn_status redyn_matrix_frobenius(const redyn_matrix* m, double* out);

REDYN_API redyn_status redyn_tensor_product(const redyn_matrix* a, const redyn_matrix* b,
                                            redyn_matrix** out);
REDYN_API redyn_status redyn_partial_trace_a(const redyn_matrix* m, size_t dim_a,
                                             size_t dim_b, redyn_matrix** out);
REDYN_API redyn_status redyn_partial_trace_b(const redyn_matrix* m, size_t dim_a,
                                             size_t dim_b, redyn_matrix** out);
/* exp(-i h t); h must be Hermitian. */
REDYN_API redyn_status redyn_unitary_exp(const redyn_matrix* h, double t,
                                         redyn_matrix** out);

/* ---- SU(N) generators -------------------------------------------------- */

REDYN_API redyn_status redyn_basis_create(size_t n, redyn_basis** out);
REDYN_API void redyn_basis_destroy(redyn_basis* b);
/* Number of generators, n * n - 1. */
REDYN_API size_t redyn_basis_size(const redyn_basis* b);
REDYN_API redyn_status redyn_basis_generator(const redyn_basis* b, size_t i,
                                             redyn_matrix** out);
/* g_ilk with [s_i, s_l] = 2i sum_k g_ilk s_k. */
REDYN_API redyn_status redyn_basis_structure_constant(const redyn_basis* b, size_t i,
                                                      size_t l, size_t k, double* out);
REDYN_API redyn_status redyn_basis_json(size_t n, char** out);

/* ---- bipartite states and dynamics ------------------------------------- */

/* rho_AB - rho_A (x) rho_B; rho must be a valid density operator. */
REDYN_API redyn_status redyn_correlation_operator(const redyn_matrix* rho, size_t dim_a,
                                                  size_t dim_b, redyn_matrix** out);
/* Interaction coefficients v_ij, row-major (N^2-1) x (M^2-1) doubles. */
REDYN_API redyn_status redyn_interaction_coefficients(const redyn_matrix* h, size_t dim_a,
                                                      size_t dim_b, double* buf,
                                                      size_t len);
REDYN_API redyn_status redyn_is_local_unitary(const redyn_matrix* h, size_t dim_a,
                                              size_t dim_b, double tol, int* out);
/* tr_B(U cor U^dag); cor must be a correlation operator. */
REDYN_API redyn_status redyn_inhomogeneous_part(const redyn_matrix* h,
                                                const redyn_matrix* cor, size_t dim_a,
                                                size_t dim_b, double t,
                                                redyn_matrix** out);
/* Exact reduced state, Kraus part and inhomogeneous part at time t. Any of the
 * three outputs may be NULL. */
REDYN_API redyn_status redyn_split_reduced_map(const redyn_matrix* h,
                                               const redyn_matrix* rho0, size_t dim_a,
                                               size_t dim_b, double t,
                                               redyn_matrix** reduced,
                                               redyn_matrix** homogeneous,
                                               redyn_matrix** inhomogeneous);
/* tr_B [V, cor] of the interaction part of h; is_zero uses tol * max(1, ||cor||). */
REDYN_API redyn_status redyn_lemma_condition(const redyn_matrix* h,
                                             const redyn_matrix* cor, size_t dim_a,
                                             size_t dim_b, double tol,
                                             redyn_matrix** out, int* is_zero);

/* ---- analysis ---------------------------------------------------------- */

REDYN_API redyn_status redyn_cnot_hamiltonian(redyn_matrix** out);
REDYN_API redyn_status redyn_verify_theorem(const redyn_matrix* h, size_t dim_a,
                                            size_t dim_b, double tol, redyn_report** out);
REDYN_API void redyn_report_destroy(redyn_report* r);
REDYN_API redyn_conclusion redyn_report_conclusion(const redyn_report* r);
REDYN_API int redyn_report_verdicts_agree(const redyn_report* r);
REDYN_API size_t redyn_report_failing_probe_count(const redyn_report* r);
REDYN_API redyn_status redyn_report_failing_probe(const redyn_report* r, size_t index,
                                                  size_t* l, size_t* m, double* residual);
REDYN_API redyn_status redyn_report_json(const redyn_report* r, char** out);

/* ---- model files and runs ---------------------------------------------- */

REDYN_API redyn_status redyn_model_load(const char* path, redyn_model** out);
REDYN_API redyn_status redyn_model_parse(const char* json_text, redyn_model** out);
REDYN_API void redyn_model_destroy(redyn_model* m);
REDYN_API redyn_status redyn_model_json(const redyn_model* m, char** out);
REDYN_API redyn_status redyn_model_save(const redyn_model* m, const char* path);
REDYN_API redyn_status redyn_model_dims(const redyn_model* m, size_t* dim_a,
                                        size_t* dim_b);
REDYN_API redyn_status redyn_model_hamiltonian(const redyn_model* m, redyn_matrix** out);
REDYN_API redyn_status redyn_model_initial_state(const redyn_model* m,
                                                 redyn_matrix** out);
REDYN_API redyn_status redyn_model_analyze(const redyn_model* m, double tol,
                                           redyn_report** out);

/* Split of the reduced map on t_k = t_max * k / steps, k = 0..steps. */
REDYN_API redyn_status redyn_run_evolve(const redyn_model* m, double t_max, size_t steps,
                                        double tol, redyn_run** out);
REDYN_API void redyn_run_destroy(redyn_run* r);
REDYN_API size_t redyn_run_record_count(const redyn_run* r);
/* Any output pointer may be NULL. */
REDYN_API redyn_status redyn_run_record(const redyn_run* r, size_t index, double* t,
                                        double* delta_norm, double* trace_distance,
                                        double* completeness_residual,
                                        double* split_residual);
REDYN_API redyn_status redyn_run_csv(const redyn_run* r, char** out);
REDYN_API redyn_status redyn_run_json(const redyn_run* r, char** out);

/* Worked CNOT example. Writes cnot_demo.json and cnot_comparison.csv into
 * out_dir (created if missing); ok reports whether both numerical checks hold. */
REDYN_API redyn_status redyn_cnot_demo(const char* out_dir, uint64_t seed, double tol,
                                       int* ok);

/* Writes text to a file, creating parent directories. */
REDYN_API redyn_status redyn_write_file(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif /* REDYN_REDYN_H_ */
