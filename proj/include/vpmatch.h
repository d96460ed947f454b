/* vpmatch.h - C interface to the vpmatch shared library.
 *
 * vpmatch prices the vertices of a Bayesian bipartite matching market and
 * simulates the induced non-adaptive accept/reject policy against the
 * offline optimum. The pipeline exchanges JSON documents:
 *
 *   instance --> moments (M, Q matrices) --> prices --> simulation report
 *
 * All functions return VPM_OK (0) or an error code; *err, when non-NULL on
 * failure, holds a message to release with vpm_string_free(). Output strings
 * are heap-allocated and owned by the caller. Instances are opaque handles.
 * Every function is deterministic given its arguments, including `threads`.
 */
#ifndef VPMATCH_H
#define VPMATCH_H

#include <stdint.h>

#if defined(_WIN32)
#define VPM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define VPM_API __attribute__((visibility("default")))
#else
#define VPM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum vpm_status {
  VPM_OK = 0,
  VPM_ERR_INTERNAL = 1,
  VPM_ERR_VALIDATION = 2, /* malformed input, failed invariants, bad dims */
  VPM_ERR_LIMIT = 3,      /* enumeration or state-space limit exceeded */
  VPM_ERR_NO_CONVERGENCE = 4
};

typedef struct vpm_instance vpm_instance;

VPM_API const char* vpm_status_name(int status);
VPM_API void vpm_string_free(char* s);

/* --- instances ------------------------------------------------------- */

VPM_API int vpm_instance_from_json(const char* json, vpm_instance** out, char** err);
VPM_API int vpm_instance_to_json(const vpm_instance* instance, char** out);
VPM_API void vpm_instance_free(vpm_instance* instance);

/* VPM_OK with "[]" when valid; VPM_ERR_VALIDATION with the violation list
 * (JSON array of {code, message, edge_id}) otherwise. */
VPM_API int vpm_instance_validate(const vpm_instance* instance, char** violations_json);

/* Three-batch separation family of size parameter n; also returns the
 * canonical batch arrival order as a JSON array. */
VPM_API int vpm_gen_lower_bound(int n, vpm_instance** out, char** order_json,
                                char** err);

VPM_API int vpm_gen_random(int n_left, int n_right, int edges, int max_support,
                           double value_scale, uint64_t seed, vpm_instance** out,
                           char** err);

/* --- pipeline stages -------------------------------------------------- */

/* Exact moments by support enumeration; profile_limit 0 means the default
 * (1e6 profiles). Fails with VPM_ERR_LIMIT when the support product is
 * larger. */
VPM_API int vpm_moments_exact(const vpm_instance* instance, uint64_t profile_limit,
                              char** moments_json, char** err);

VPM_API int vpm_moments_mc(const vpm_instance* instance, uint64_t trials,
                           uint64_t seed, int threads, char** moments_json,
                           char** err);

/* Fixed-point vertex prices; eps <= 0 selects the relative default
 * 1e-9 * max(1, sum M). Output includes the residual trace and the
 * 3-approximation certificate. */
VPM_API int vpm_solve_prices(const char* moments_json, double eps,
                             char** solution_json, char** err);

/* Expands a strategy spec ("random:5,ascending-mean,batch-lb,...") into a
 * JSON array of {tag, sequence} orders. */
VPM_API int vpm_expand_orders(const vpm_instance* instance, const char* orders_spec,
                              uint64_t seed, char** orders_json, char** err);

/* Runs the priced policy under every order on shared per-trial profiles. */
VPM_API int vpm_simulate(const vpm_instance* instance, const char* prices_json,
                         const char* orders_json, uint64_t trials, uint64_t seed,
                         int threads, char** report_json, char** err);

VPM_API int vpm_report_to_csv(const char* report_json, char** csv, char** err);

/* Whole separation pipeline for the size-n family: estimated offline
 * optimum, policy value under the batch order, the exact adaptive-online
 * value when n <= 2, and their ratio. */
VPM_API int vpm_lower_bound_report(int n, uint64_t trials, uint64_t seed, int threads,
                                   double eps, char** report_json, char** err);

#ifdef __cplusplus
}
#endif

#endif /* VPMATCH_H */
