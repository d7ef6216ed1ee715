/*
 * C interface to the Ising coupling compiler.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an isc_status;
 * on failure isc_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Strings returned through
 * char** out-parameters are heap allocated; release them with isc_string_free.
 */
#ifndef ISINGC_ISINGC_H
#define ISINGC_ISINGC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ISC_API __declspec(dllexport)
#else
#define ISC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum isc_status {
  ISC_OK = 0,
  ISC_ERR_PARSE = 1,
  ISC_ERR_INVALID_ARGUMENT = 2,
  ISC_ERR_DIMENSION_MISMATCH = 3,
  ISC_ERR_REQUIRES_UNWEIGHTED = 4,
  ISC_ERR_TOO_LARGE = 5,
  ISC_ERR_IO = 6,
  ISC_ERR_INTERNAL = 7
} isc_status;

typedef enum isc_method { ISC_METHOD_STARS = 0, ISC_METHOD_EDGES = 1 } isc_method;
typedef enum isc_objective { ISC_OBJECTIVE_L0 = 0, ISC_OBJECTIVE_L1 = 1 } isc_objective;
typedef enum isc_big_m_kind { ISC_BIG_M_SUM = 0, ISC_BIG_M_THEOREM = 1 } isc_big_m_kind;
typedef enum isc_solve_status {
  ISC_SOLVE_OPTIMAL = 0,
  ISC_SOLVE_INCUMBENT_TIMEOUT = 1,
  ISC_SOLVE_SUBSAMPLE_COMPLETE = 2,
  ISC_SOLVE_INFEASIBLE = 3
} isc_solve_status;
typedef enum isc_compilation { ISC_COMPILATION_CX = 0, ISC_COMPILATION_MS = 1 } isc_compilation;

typedef struct isc_graph isc_graph;
typedef struct isc_sequence isc_sequence;
typedef struct isc_opt_result isc_opt_result;

typedef struct isc_timing {
  double t_pi_us;
  double t_ising_per_ion_us;
  double t_ms_us;
} isc_timing;

typedef struct isc_verify_report {
  int verified;
  /* First mismatching pair (i < j); -1 when verified. */
  int mismatch_i;
  int mismatch_j;
} isc_verify_report;

typedef struct isc_angles {
  double gamma;
  double beta;
  double expectation;
  double ratio;
} isc_angles;

ISC_API const char* isc_version(void);
ISC_API const char* isc_last_error(void);
ISC_API void isc_string_free(char* s);

/* Graphs */
ISC_API isc_status isc_graph_parse_edge_list(const char* text, isc_graph** out);
ISC_API isc_status isc_graph_from_json(const char* json, isc_graph** out);
/* weight_set: comma-separated rationals ("1,2,3"), or NULL/"" for unit weights. */
ISC_API isc_status isc_graph_random_er(int n, double p, const char* weight_set, uint64_t seed, isc_graph** out);
ISC_API void isc_graph_destroy(isc_graph* g);
ISC_API int isc_graph_num_vertices(const isc_graph* g);
ISC_API size_t isc_graph_num_edges(const isc_graph* g);
ISC_API int isc_graph_is_unweighted(const isc_graph* g);
ISC_API isc_status isc_graph_to_json(const isc_graph* g, char** out);
ISC_API isc_status isc_graph_to_edge_list(const isc_graph* g, char** out);

/* Pulse sequences */
ISC_API isc_status isc_sequence_from_json(const char* json, isc_sequence** out);
ISC_API isc_status isc_sequence_to_json(const isc_sequence* s, char** out);
ISC_API void isc_sequence_destroy(isc_sequence* s);
ISC_API int isc_sequence_num_qubits(const isc_sequence* s);
ISC_API size_t isc_sequence_l0(const isc_sequence* s);
/* Exact L1 as "p/q". */
ISC_API isc_status isc_sequence_l1(const isc_sequence* s, char** out);
ISC_API isc_status isc_sequence_canonicalize(const isc_sequence* s, isc_sequence** out);
ISC_API isc_status isc_sequence_compose(const isc_sequence* a, const isc_sequence* b, isc_sequence** out);

/* Compilation and checks */
ISC_API isc_status isc_compile(const isc_graph* g, isc_method method, isc_sequence** out);
ISC_API isc_status isc_verify(const isc_sequence* s, const isc_graph* g, isc_verify_report* out);
ISC_API isc_status isc_lower_bound(int n, int* out);
/* NULL timing means the defaults (5, 50, 100 us). */
ISC_API isc_status isc_estimate_time_us(const isc_sequence* s, const isc_timing* timing, double* out);
/* Same formula from the norms alone; l1 in units of the edge weight. */
ISC_API isc_status isc_estimate_time_norms_us(int n, size_t l0, double l1, const isc_timing* timing, double* out);
ISC_API isc_timing isc_default_timing(void);

/* Exact optimization. time_limit_ms must be positive; L1 ignores m_kind and the limit. */
ISC_API isc_status isc_optimize(const isc_graph* g, isc_objective objective, isc_big_m_kind m_kind,
                                int64_t time_limit_ms, isc_opt_result** out);
ISC_API isc_status isc_optimize_subsample(const isc_graph* g, int row_budget, uint64_t seed, isc_big_m_kind m_kind,
                                          int64_t time_limit_ms, isc_opt_result** out);
ISC_API void isc_opt_result_destroy(isc_opt_result* r);
ISC_API isc_solve_status isc_opt_result_status(const isc_opt_result* r);
ISC_API isc_status isc_opt_result_objective(const isc_opt_result* r, char** out);
ISC_API isc_status isc_opt_result_sequence(const isc_opt_result* r, isc_sequence** out);
ISC_API isc_status isc_opt_result_to_json(const isc_opt_result* r, char** out);
/* Big-M value for a graph as "p/q". */
ISC_API isc_status isc_big_m(const isc_graph* g, isc_big_m_kind kind, char** out);

/* Noisy p = 1 QAOA. seq may be NULL for CX. */
ISC_API isc_status isc_simulate(const isc_graph* g, isc_compilation compilation, const isc_sequence* seq, double gamma,
                                double beta, double lambda, double* expectation);
ISC_API isc_status isc_optimize_angles(const isc_graph* g, isc_compilation compilation, const isc_sequence* seq,
                                       double lambda, int grid_resolution, isc_angles* out);
ISC_API isc_status isc_maxcut(const isc_graph* g, double* out);

/* Experiment sweeps. kind: fig_random_unweighted | fig_random_weighted | fig_worstcase | fig_noise.
 * config_text is "key = value" lines. summary_json (optional) receives written files and counts. */
ISC_API isc_status isc_sweep(const char* kind, const char* config_text, const char* out_dir, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* ISINGC_ISINGC_H */
