#pragma once
// Brute-force dense reference routines for cross-validation: matrix
// exponential, symmetric eigensolver, RK4 integrator, and the Gauss-Jordan
// inverse they need. Deliberately disjoint from the banded/spectral code in
// the other modules -- these check those, so they share nothing with them.
// Desk scale only: dimensions are capped at 128.

#include "nrssh/matrix.hpp"

namespace nrssh::oracle {

inline constexpr std::size_t kMaxDim = 128;

// Scaling-and-squaring with a diagonal Pade(13,13) approximant. Accurate to
// ~1e-13 relative for ||A||_1 up to a few hundred.
RMat expm(const RMat& a);
CMat expm(const CMat& a);

// Full orthonormal eigensystem of a real symmetric matrix by cyclic Jacobi
// rotations; values ascending. Rejects input whose asymmetry exceeds
// 1e-12 * max|A|.
std::pair<rvec, RMat> dense_eig_sym(const RMat& a);

// Gauss-Jordan inverse with partial pivoting. Throws on singular input.
RMat invert(const RMat& a);

struct SecondOrderTrajectory {
    rvec times;
    RMat v;   // rows are V(t_k)
    RMat w;   // rows are V'(t_k)
};

// Classic RK4 on the first-order form of  coeff * y'' = y,  i.e.
// z' = [[0, I], [coeff^-1, 0]] z with z = (y, y'). The step is shrunk
// slightly if needed so that t_end is hit exactly; every stride-th state is
// stored (plus the final one).
SecondOrderTrajectory rk4_second_order(const RMat& coeff, const rvec& v0, const rvec& vdot0,
                                       double t_end, double dt, std::size_t stride = 1);

}  // namespace nrssh::oracle
