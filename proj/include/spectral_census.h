/* spectral_census: lower bounds for eigenvalue counting functions of
 * self-adjoint integral operators with continuous Hermitian kernels, plus the
 * brute-force Nystrom oracle that cross-checks every bound.
 *
 * All functions return sc_status; outputs go through pointers.  Objects are
 * opaque handles owned by the caller and released with the matching _destroy.
 * On failure, sc_last_error() returns a thread-local diagnostic message.
 */
#ifndef SPECTRAL_CENSUS_H
#define SPECTRAL_CENSUS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_USAGE = 1,          /* bad arguments or malformed descriptors */
  SC_ERR_ADMISSIBILITY = 2,  /* measure/shift violates the admissibility condition */
  SC_ERR_INVALID_KERNEL = 3, /* kernel fails the Hermitian requirements */
  SC_ERR_NOT_APPLICABLE = 4, /* operation undefined for this input */
  SC_ERR_IO = 5,
  SC_ERR_INTERNAL = 6
} sc_status;

/* Message for the most recent failing call on this thread. */
const char* sc_last_error(void);

/* Strings returned through char** outputs are heap-allocated; free them here. */
void sc_string_free(char* s);

typedef struct sc_kernel sc_kernel;
typedef struct sc_measure sc_measure;
typedef struct sc_quadrature sc_quadrature;

/* ---- kernels ------------------------------------------------------------ */

/* descriptor_json: {"name": "constant"|"difference"|"gaussian-bump"|
 * "mexican-hat"|"dn", ...params}; see sc_catalog_json(). */
sc_status sc_kernel_create(const char* descriptor_json, sc_kernel** out);
void sc_kernel_destroy(sc_kernel* k);
int sc_kernel_dim(const sc_kernel* k);

/* K(xi, eta); xi and eta are arrays of length sc_kernel_dim(k). */
sc_status sc_kernel_eval(const sc_kernel* k, const double* xi, const double* eta, double* out_re,
                         double* out_im);

/* Smaller eigenvalue of the 2x2 matrix of kernel values at (xi, eta). */
sc_status sc_kernel_kappa(const sc_kernel* k, const double* xi, const double* eta, double* out);

/* JSON description of the built-in kernel catalog. */
sc_status sc_catalog_json(char** out_json);

/* ---- measures ----------------------------------------------------------- */

/* Symmetrizing constructor over n input pairs of dimension dim: xi and eta
 * hold n*dim coordinates, w holds n positive weights. */
sc_status sc_measure_symmetrize(const double* xi, const double* eta, const double* w, size_t n,
                                int dim, sc_measure** out);

/* Shift measure: points/w describe a probability measure (n atoms, dimension
 * dim); theta is a nonzero shift of length dim. */
sc_status sc_measure_shift(const double* points, const double* w, size_t n, int dim,
                           const double* theta, sc_measure** out);

/* Chord measure on the sphere of radius lambda: pairs at distance
 * r in (0, 2*lambda), d in {2,3}, n nodes (n >= 8). */
sc_status sc_measure_chord(double lambda, double r, int d, int n, sc_measure** out);

/* JSON round-trip: array of {"xi": [...], "eta": [...], "w": ...}. */
sc_status sc_measure_from_json(const char* json, sc_measure** out);
sc_status sc_measure_to_json(const sc_measure* mu, char** out_json);

size_t sc_measure_atom_count(const sc_measure* mu);
double sc_measure_mass(const sc_measure* mu);
void sc_measure_destroy(sc_measure* mu);

/* ---- quadratures --------------------------------------------------------- */

/* descriptor_json: {"kind": "gauss-legendre-interval"|"box-product"|
 * "circle-uniform"|"sphere-latlong", ...params}. */
sc_status sc_quadrature_create(const char* descriptor_json, sc_quadrature** out);
size_t sc_quadrature_size(const sc_quadrature* q);
void sc_quadrature_destroy(sc_quadrature* q);

/* ---- bounds -------------------------------------------------------------- */

typedef struct sc_bound_report {
  double t;
  double numerator;   /* sum of w (t - kappa)_+ */
  double denominator; /* double sum of w_a w_b |K|^2 over the marginal */
  double c_t;         /* numerator^2 / denominator; +inf when degenerate */
  double raw_bound;   /* 1/2 + c_t/16 */
  long long integer_bound;
  long long n_mu;
  int degenerate; /* kernel vanishes on the marginal support */
} sc_bound_report;

sc_status sc_check_c2(const sc_kernel* k, const sc_measure* mu, double t, int* out);
sc_status sc_theorem_bound(const sc_kernel* k, const sc_measure* mu, double t,
                           sc_bound_report* out);

/* Trace/Hilbert-Schmidt bound on the nodes with negative kernel diagonal. */
sc_status sc_trace_hs_bound(const sc_kernel* k, const sc_quadrature* q, double* out);

/* Closed-form difference-kernel bound at shift theta (kernel must be a
 * difference kernel); mu describes a probability measure as in
 * sc_measure_shift. */
sc_status sc_convolution_bound_point(const sc_kernel* k, const double* theta, double t,
                                     const double* points, const double* w, size_t n,
                                     double* out);

/* Shift-optimized bound; *out_infinite is set when the tail sup vanishes and
 * the counting function is unbounded. */
sc_status sc_convolution_bound_sup(const sc_kernel* k, double t, double search_radius,
                                   double tail_radius, int grid_n, double* out_bound,
                                   int* out_infinite);

/* Closed-form constant of the boxed-domain application; sides has length d. */
sc_status sc_fs_constant(const double* sides, int d, double lambda, double r, int n_dirs,
                         double* out);

/* ceil(n_K) + n_D, plus dim_ker when c3_asserted is nonzero. */
long long sc_dn_gap_report(double n_K, long long dim_ker, long long n_D, int c3_asserted);

/* ---- spectral oracle ------------------------------------------------------ */

/* Number of Nystrom eigenvalues below t - guard (guard < 0 selects the default
 * 1e-9 * max|eig|); *out_warning flags eigenvalues inside [t-guard, t+guard]. */
sc_status sc_oracle_count(const sc_kernel* k, const sc_quadrature* q, double t, double guard,
                          long long* out_count, int* out_warning);

/* All Nystrom eigenvalues, ascending; out must hold sc_quadrature_size(q). */
sc_status sc_oracle_eigenvalues(const sc_kernel* k, const sc_quadrature* q, double* out);

/* ---- dn-gap -------------------------------------------------------------- */

sc_status sc_chi_hat_box(const double* sides, int d, const double* theta, double* out_re,
                         double* out_im);
sc_status sc_boundary_layer_volume(const double* sides, int d, double lambda, double* out);

/* Full pipeline for one (lambda, r); returns the report as JSON. */
sc_status sc_dn_lower_bound(const double* sides, int d, double lambda, double r, int n_sphere,
                            long long n_dirichlet, char** out_json);

/* ---- optimizer ------------------------------------------------------------ */

/* Greedy measure search over an n_grid-point tensor pool on the kernel's
 * domain; returns the measure and its c_t. */
sc_status sc_optimize_greedy(const sc_kernel* k, double t, int n_grid, int max_atoms,
                             sc_measure** out_mu, double* out_c);

/* ---- experiment runner ----------------------------------------------------- */

/* Runs a config file exactly like the CLI `run` command.  output_dir may be
 * NULL (use the config's "output"); seed_override < 0 keeps the config seed.
 * *out_exit_code receives 0 (success), 1 (usage/admissibility error) or
 * 2 (verify found bound > converged oracle count). */
sc_status sc_run_config(const char* config_path, const char* output_dir, long long seed_override,
                        int* out_exit_code);

#ifdef __cplusplus
}
#endif

#endif /* SPECTRAL_CENSUS_H */
