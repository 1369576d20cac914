/* nrssh: nonreciprocal SSH chain simulator with an LC-circuit co-simulation.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns an nrssh_status, and
 * nrssh_last_error() gives a thread-local message for the most recent
 * failure on the calling thread.
 *
 * Conventions:
 *   - the chain has dim = 2*n_cells - 1 sites; flat site index 0..dim-1,
 *     even indices are A sites, odd are B sites;
 *   - quantum times are dimensionless nu*t, circuit times dimensionless
 *     omega0*t with omega0 = 1/sqrt(ref_L*ref_C);
 *   - matrices are passed as row-major arrays, caller-allocated.
 */

#ifndef NRSSH_H
#define NRSSH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nrssh_status {
    NRSSH_OK = 0,
    NRSSH_ERR_INVALID = 1,   /* parameter/shape validation failed */
    NRSSH_ERR_NUMERICAL = 2  /* solver failure (non-convergence, singularity, ...) */
} nrssh_status;

typedef struct nrssh_model nrssh_model;
typedef struct nrssh_eigen nrssh_eigen;
typedef struct nrssh_circuit nrssh_circuit;

/* Message for the last failure on this thread; empty string if none. */
const char* nrssh_last_error(void);

/* Free a string returned by one of the *_text functions. */
void nrssh_string_free(char* s);

/* ---- model ---------------------------------------------------------- */

nrssh_status nrssh_model_create(double nu, double kappa1, double kappa2, int n_cells,
                                nrssh_model** out);
void nrssh_model_free(nrssh_model* m);

int nrssh_model_dim(const nrssh_model* m);          /* 2N-1 */
double nrssh_model_kappa(const nrssh_model* m);     /* sqrt(kappa1*kappa2) */
double nrssh_model_skin_ratio(const nrssh_model* m);/* r = sqrt(kappa1/kappa2) */

/* dense dim*dim Hamiltonian, row-major */
nrssh_status nrssh_model_hamiltonian(const nrssh_model* m, double* out);

/* unit-norm E=0 eigenvector (real amplitudes), length dim */
nrssh_status nrssh_model_zero_mode(const nrssh_model* m, double* out);

/* 1 if |kappa1*kappa2| > nu^2 (strict), else 0; optionally writes the
 * zero-mode decay ratio |nu/kappa1|. */
int nrssh_model_has_left_end_state(const nrssh_model* m, double* decay_ratio);

/* ---- eigensystem ----------------------------------------------------- */

nrssh_status nrssh_eigen_create(const nrssh_model* m, nrssh_eigen** out);
void nrssh_eigen_free(nrssh_eigen* e);

/* energies ascending, length dim */
nrssh_status nrssh_eigen_energies(const nrssh_eigen* e, double* out);

/* right eigenvectors as columns / left eigenvectors as rows; dim*dim row-major */
nrssh_status nrssh_eigen_right_vectors(const nrssh_eigen* e, double* out);
nrssh_status nrssh_eigen_left_vectors(const nrssh_eigen* e, double* out);

/* weights w_s of an initial state (psi0_im may be NULL for a real state);
 * sum of squares is 1 */
nrssh_status nrssh_eigen_weights(const nrssh_eigen* e, const double* psi0_re,
                                 const double* psi0_im, double* out);

/* ---- quantum evolution ------------------------------------------------ */

/* Spectral propagation of psi0 over n_times points (times ascending, first
 * one 0). Writes relative intensities |Psi_i(t)|^2/|Psi_0(0)|^2 into
 * intensities (n_times*dim, row-major); states_re/states_im, when non-NULL,
 * receive the complex amplitudes. */
nrssh_status nrssh_evolve(const nrssh_model* m, const double* psi0_re, const double* psi0_im,
                          const double* times, size_t n_times, double* intensities,
                          double* states_re, double* states_im);

/* ---- circuit ----------------------------------------------------------- */

nrssh_status nrssh_default_lambda(const nrssh_model* m, double* out);

nrssh_status nrssh_circuit_create(const nrssh_model* m, double lambda, double ref_L,
                                  double ref_C, nrssh_circuit** out);
void nrssh_circuit_free(nrssh_circuit* c);

double nrssh_circuit_omega0(const nrssh_circuit* c);
double nrssh_circuit_lambda(const nrssh_circuit* c);

/* per-cell component values, each array of length n_cells (any may be NULL) */
nrssh_status nrssh_circuit_components(const nrssh_circuit* c, double* c_a, double* c_b,
                                      double* d_a, double* d_b, double* l_a, double* l_b);

/* component table CSV / SPICE netlist; free with nrssh_string_free */
nrssh_status nrssh_circuit_component_csv(const nrssh_circuit* c, char** out_text);
nrssh_status nrssh_circuit_netlist(const nrssh_circuit* c, double v0, char** out_text);

/* Closed-form node voltages from the switch initial condition V(0)=v0*e1,
 * V'(0)=0, at the given dimensionless times omega0*t; voltages is
 * n_times*dim row-major, in volts. */
nrssh_status nrssh_circuit_evolve(const nrssh_circuit* c, double v0, const double* times,
                                  size_t n_times, double* voltages);

/* Time-averaged |V_i| over [t/2, t] on a uniform grid of step tau_step
 * (dimensionless), and the aIPR localization measure built from it. */
nrssh_status nrssh_circuit_average_profile(const nrssh_circuit* c, double v0, double t,
                                           double tau_step, double* profile);
nrssh_status nrssh_circuit_aipr(const nrssh_circuit* c, double v0, double t, double tau_step,
                                double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NRSSH_H */
