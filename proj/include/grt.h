/*
 * C interface to the graph-constrained tensor library.
 *
 * Conventions:
 *   - Every function returning int gives 0 on success and a nonzero status
 *     code on failure (see GRT_STATUS_*). grt_last_error() returns a
 *     thread-local message for the most recent failure on this thread.
 *   - Strings produced by the library (out_json, out_csv, ...) are owned by
 *     the caller and must be released with grt_string_free(). They are UTF-8
 *     and NUL-terminated.
 *   - grt_tensor is an opaque handle; release with grt_tensor_free().
 *   - Tensor JSON: {"order": n, "dims": [...], "coeffs": [[re, im], ...]},
 *     coefficients row-major with the first index slowest; optional
 *     "label_base" (0 or 1, default 1) names the first leg.
 */
#ifndef GRT_H
#define GRT_H

#ifdef __cplusplus
extern "C" {
#endif

#define GRT_STATUS_OK 0
#define GRT_STATUS_BAD_ARGUMENT 1
#define GRT_STATUS_BAD_FORMAT 2
#define GRT_STATUS_DIMENSION_MISMATCH 3
#define GRT_STATUS_NUMERIC_FAILURE 4
#define GRT_STATUS_NOT_CONVERGED 5
#define GRT_STATUS_UNSUPPORTED 6
#define GRT_STATUS_INTERNAL 99

typedef struct grt_tensor grt_tensor;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* grt_version(void);

/* Message for the most recent failure on the calling thread. Valid until the
 * next failing call on the same thread; do not free. */
const char* grt_last_error(void);

void grt_string_free(char* s);
void grt_tensor_free(grt_tensor* t);

/* ---- tensors -------------------------------------------------------- */

int grt_tensor_from_json(const char* json, grt_tensor** out);
int grt_tensor_to_json(const grt_tensor* t, char** out_json);

/* FNV-1a 64-bit digest of a byte string, hex encoded. */
int grt_digest(const char* bytes, unsigned long long length, char** out_hex);

/* ---- catalog -------------------------------------------------------- */

/* Families: "penta-ame" (theta), "penta-isolated", "hex-type1" (a, j, k),
 * "hex-type3" (a), "hex-p2a", "hex-p2b", "ghz" (n, d), "ame62",
 * "wheel" (rim), "frame" (n, j_coupling, seed), "combined".
 * params_json supplies the named parameters, e.g. {"a": 0.05, "j": 0}.
 * out_tensor and out_record_json may each be NULL when not wanted;
 * the record carries family, parameters, components and entropy profile
 * where applicable. */
int grt_catalog(const char* family, const char* params_json,
                grt_tensor** out_tensor, char** out_record_json);

/* JSON array describing every family and its parameters. */
int grt_catalog_list(char** out_json);

/* Symmetric tensor from independent orbit components.
 * slots = "pentagon" (8 components, qubit legs 1..5) or
 *         "hexagon" (13 components, bulk leg 0 + ring legs 1..6). */
int grt_expand_components(const char* slots, const double* components,
                          int count, grt_tensor** out_tensor);

/* Built-in constraint inputs by name: "k5", "c5", "wheel6" (graph JSON),
 * "hex-triangles" (hypergraph JSON). */
int grt_builtin_graph(const char* name, char** out_json);

/* ---- constraint checks ---------------------------------------------- */

/* out_pass receives 1/0. The report lists every subset checked. */
int grt_verify_graph(const grt_tensor* t, const char* graph_json, double tol,
                     int* out_pass, char** out_report_json);
int grt_verify_hypergraph(const grt_tensor* t, const char* hypergraph_json,
                          double tol, int* out_pass, char** out_report_json);

/* Exhaustive search for all identity-proportional reductions of size
 * <= floor(order/2); returns the hypergraph JSON. */
int grt_faithful_hypergraph(const grt_tensor* t, double tol, char** out_json);

/* Renyi-2 deficits of the five reference leg triples (seven-leg tensors). */
int grt_entropy_profile(const grt_tensor* t, char** out_json);

/* ---- spectra and correlators ---------------------------------------- */

/* Transfer node between two legs: JSON with the normalised spectrum, the
 * raw leading eigenvalue and the per-eigenvalue scaling dimensions for the
 * given tiling (n_gon, k in {6,4} or {5,4}). */
int grt_node_spectrum(const grt_tensor* t, int leg_in, int leg_out, int n_gon,
                      int k, char** out_json);

int grt_scaling_dimension(double lambda2, int n_gon, int k, double* out_delta);

/* CSV of |lambda2| for the (1,3) and (1,4) nodes under the one-parameter
 * local rotation on a uniform grid of the given size. */
int grt_rotation_scan(const grt_tensor* t, int grid_points, char** out_csv);

/* Boundary correlator on a named network ("depth1-6-4" or "depth2-6-4").
 * probes = comma-separated "<op>@<boundary index>" with op in {X, Y, Z, I},
 * e.g. "Z@3,Z@17"; 1 to 3 probes. method = "path" or "brute". The result
 * JSON reports value_re/value_im, the method, and path tile/bond counts. */
int grt_correlator(const char* net_name, const grt_tensor* t,
                   const char* probes, const char* method, char** out_json);

/* Exhaustive path audit of a named network: max paths per boundary pair,
 * connected pair count, and the shared-tile statistics over triples. */
int grt_network_audit(const char* net_name, char** out_json);

/* ---- searches and samplers ------------------------------------------ */

/* options_json (all fields optional): {"seed", "restarts", "max_iterations",
 * "cost_threshold", "polish", "classify_tol", "threads"}. out_csv gets one
 * row per accepted solution; out_summary_json the family tally. Either
 * output pointer may be NULL. */
int grt_solve(const char* options_json, char** out_csv, char** out_summary_json);

/* Purity cost and its analytic gradient over the 13 hexagon components. */
int grt_solver_cost(const double* components, int count, double* out_cost);
int grt_solver_gradient(const double* components, int count, double* out_gradient);

/* Scaling-dimension samples of the pentagon+perfect composite under Haar
 * random leg unitaries; CSV columns sample, delta2, delta3. shared != 0
 * applies one unitary to all five legs. threads <= 0 picks automatically;
 * the output never depends on the thread count. */
int grt_violin(long samples, unsigned long long seed, int shared, int threads,
               char** out_csv);

/* Build the n-wire frame with Haar-dressed dual-unitary gates (coupling
 * j_coupling, seeded) and verify its neighbor/non-neighbor isometries. */
int grt_frame_report(int n, double j_coupling, unsigned long long seed,
                     char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* GRT_H */
