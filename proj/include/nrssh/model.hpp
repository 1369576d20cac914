#pragma once
// Nonreciprocal SSH chain under open boundary conditions.
//
// Geometry: N unit cells, the last one truncated to its A site, so the chain
// has 2N-1 sites. Flat site index i = 1..2N-1 (0-based internally): odd i are
// A sites of cell (i+1)/2, even i are B sites of cell i/2. This indexing is
// used by every module.
//
// Hopping amplitudes: nu within a cell (reciprocal), kappa1 forward /
// kappa2 backward between cells (nonreciprocal). The resulting tridiagonal
// matrix H is non-symmetric for kappa1 != kappa2 but similar to a real
// symmetric matrix whenever kappa1*kappa2 > 0, via a diagonal scaling S with
// geometrically decaying entries -- the non-Hermitian skin effect in matrix
// form.

#include <complex>

#include "nrssh/matrix.hpp"

namespace nrssh {

struct ModelParams {
    double nu;       // intra-cell hopping, positive; the energy unit
    double kappa1;   // inter-cell hopping, forward
    double kappa2;   // inter-cell hopping, backward
    int n_cells;     // N >= 2; chain has 2N-1 sites

    int dim() const { return 2 * n_cells - 1; }

    // Throws std::invalid_argument naming the violated constraint.
    // Quantum modules admit kappa1*kappa2 > 0 with either sign; circuit
    // synthesis additionally requires kappa1 > 0 and kappa2 > 0 and checks
    // that itself.
    void validate() const;
};

struct DerivedParams {
    double kappa;   // sqrt(kappa1*kappa2) > 0
    double r;       // sqrt(kappa1/kappa2) > 0; r >= 1 iff |kappa1| >= |kappa2|
};

DerivedParams derived(const ModelParams& p);

// Diagonal similarity scaling S = diag(1, 1, 1/r, 1/r, ..., r^-(N-2), r^-(N-1)):
// both sites of cell n carry r^-(n-1), the final lone A site r^-(N-1).
struct SimilarityScaling {
    rvec entries;   // strictly positive

    rvec apply(const rvec& v) const;            // S v
    rvec apply_inverse(const rvec& v) const;    // S^-1 v
    cvec apply(const cvec& v) const;
    cvec apply_inverse(const cvec& v) const;
};

// H of the open chain: zero diagonal, superdiagonal (nu, kappa1, nu, ...),
// subdiagonal (nu, kappa2, nu, ...).
Tridiagonal build_hamiltonian(const ModelParams& p);

// The symmetric matrix similar to H: off-diagonals alternate (nu, kappa_eff)
// with kappa_eff = kappa1/r = sign(kappa1)*sqrt(kappa1*kappa2). For the
// standard regime kappa1,2 > 0 this is (nu, kappa); the sign carries over for
// negative hopping pairs so that S^-1 H S equals this matrix exactly.
Tridiagonal build_hermitian_counterpart(const ModelParams& p);

SimilarityScaling build_similarity(const ModelParams& p);

// The E=0 eigenvector, unit norm: amplitude (-nu/kappa1)^(n-1) on the n-th A
// site, zero on B sites. It exists for every valid parameter set (the odd
// site count forces it); whether it is a topologically protected end state is
// a separate question answered by has_left_end_state.
cvec analytic_zero_mode(const ModelParams& p);

struct EndStateInfo {
    bool exists;          // |kappa1*kappa2| > nu^2 (non-Bloch criterion, strict)
    double decay_ratio;   // |nu/kappa1|, the zero mode's A-site decay factor
};

EndStateInfo has_left_end_state(const ModelParams& p);

}  // namespace nrssh
