#pragma once
// Spectral time evolution under the non-symmetric chain Hamiltonian:
//   Psi(t) = S Phi exp(-i E t) Phi^T S^-1 Psi(0)
// (hbar = 1, times in units of 1/nu). One eigendecomposition, then analytic
// phases -- no time-stepping error.

#include <span>

#include "nrssh/eigen.hpp"
#include "nrssh/matrix.hpp"
#include "nrssh/model.hpp"

namespace nrssh {

struct QuantumTrajectory {
    ModelParams params;
    rvec times;        // dimensionless nu*t
    CMat states;       // row k = Psi(times[k])
    RMat intensities;  // I_i(t) = |Psi_i(t)|^2 / |Psi_1(0)|^2
};

// Requires kappa1*kappa2 > 0, |psi0| of length 2N-1 with psi0[0] != 0 (the
// relative-intensity normalization), times non-decreasing with times[0] = 0.
QuantumTrajectory evolve(const ModelParams& p, std::span<const std::complex<double>> psi0,
                         rvec times);

// The propagator split into its three stages: scale by S^-1, evolve under the
// symmetric similar matrix, rescale by S. Composing them reproduces evolve().
struct ThreeStepDecomposition {
    cvec scaled_input;       // S^-1 Psi(0)
    cvec hermitian_evolved;  // exp(-i Htilde t) S^-1 Psi(0)
    cvec rescaled_output;    // Psi(t)
};

ThreeStepDecomposition three_step_decomposition(const ModelParams& p,
                                                std::span<const std::complex<double>> psi0,
                                                double t);

// I_1(t) -- the left-end relative intensity per time point.
rvec end_survival(const QuantumTrajectory& traj);

}  // namespace nrssh
