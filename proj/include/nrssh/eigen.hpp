#pragma once
// Eigen-decomposition of the symmetric tridiagonal similar matrix, lifted to
// the biorthogonal eigensystem of the non-symmetric chain Hamiltonian.

#include <span>
#include <utility>

#include "nrssh/matrix.hpp"
#include "nrssh/model.hpp"

namespace nrssh {

// All eigenpairs of a real symmetric tridiagonal matrix via implicit-shift QL
// with accumulated rotations. Values ascending (ties kept in original order),
// vectors orthonormal, each column's sign fixed so its first significant
// component is positive. Throws std::runtime_error naming the failing index
// if an eigenvalue does not converge within the iteration budget.
std::pair<rvec, RMat> eigh_tridiagonal(rvec diag, rvec offdiag);

struct EigenSystem {
    ModelParams params;
    rvec scaling;            // S entries
    rvec energies;           // ascending
    RMat hermitian_vectors;  // columns phi_s, orthonormal
    RMat right_vectors;      // columns S phi_s
    RMat left_vectors;       // rows phi_s^T S^-1; left*right = identity

    int dim() const { return params.dim(); }
};

// Requires kappa1*kappa2 > 0. Left/right vectors are derived from the
// orthonormal phi_s and never renormalized, so biorthonormality is exact by
// construction.
EigenSystem eigensystem(const ModelParams& p);

// Weight of an initial state on each eigenvector,
//   w_s = |psi_l_s . psi0| / sqrt(sum_s' |psi_l_s' . psi0|^2),
// so sum_s w_s^2 = 1. Throws on a zero input vector.
rvec initial_state_weights(const EigenSystem& es, std::span<const std::complex<double>> psi0);

}  // namespace nrssh
