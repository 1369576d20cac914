#pragma once
// Time-domain solution of the lossless circuit equation
//   (scriptH - Lambda) V''(t) - V(t) = 0
// in closed form: decompose over the right eigenvectors of scriptH, solve
// each mode as alpha_s cos(w_s t) + beta_s sin(w_s t). Times are handled as
// dimensionless tau = omega0 * t throughout; omega0 = 1/sqrt(LC).

#include <span>

#include "nrssh/circuit.hpp"
#include "nrssh/matrix.hpp"
#include "nrssh/model.hpp"

namespace nrssh {

// Switch-based preparation: the DC source charges the first cell, leaving
// V(0) = (v0, 0, ..., 0) and, after the switch flips, V'(0) = 0.
struct CircuitInitialState {
    rvec v;      // volts
    rvec vdot;   // volts/second
};

CircuitInitialState prepare_initial_state(const CircuitDesign& d, double v0);

struct ModalSolution {
    RMat eigvecs;       // columns are S phi_s, the right eigenvectors of scriptH
    rvec omegas;        // 1/sqrt(lambda LC - eps_s), rad/s, all positive
    rvec omega_ratios;  // omegas / omega0 = 1/sqrt(lambda - E_s/nu)
    rvec alphas, betas; // modal coefficients (volts)
    double omega0;
};

// alpha = M^-1 V(0), beta_s = [M^-1 V'(0)]_s / omega_s, with M^-1 applied
// exactly as Phi^T S^-1. Throws std::runtime_error if some modal frequency
// would be imaginary (cannot happen for a validated design).
ModalSolution modal_solve(const CircuitDesign& d, const ModelParams& p, std::span<const double> v0,
                          std::span<const double> vdot0);

struct CircuitTrajectory {
    rvec times;     // dimensionless omega0*t
    RMat voltages;  // row k = V(times[k]) in volts
};

// Exact superposition at each requested time; no integration error.
CircuitTrajectory evaluate(const ModalSolution& ms, rvec times);

// Independent route for cross-checks: the block matrix exponential
//   exp([[0, I], [K, 0]] tau),  K = ((1/nu) H - lambda I)^-1,
// computed with the dense reference expm, applied to (V(0), V'(0)/omega0).
// Returns V(tau) (volts) and W(tau) = dV/dtau.
struct FirstOrderState {
    rvec v;
    rvec w_tau;
};

FirstOrderState first_order_propagate(const CircuitDesign& d, const ModelParams& p,
                                      std::span<const double> v0, std::span<const double> vdot0,
                                      double tau);

// Time-averaged absolute voltages over the window [t/2, t]:
//   Vbar_i = (2/t) * integral_{t/2}^{t} |V_i(tau)| dtau
// (composite trapezoid over the trajectory samples that fall in the window).
// The trajectory must cover the window with at least 101 samples.
rvec average_profile(const CircuitTrajectory& traj, double t);

// aIPR = sum_i Vbar_i^4 / (sum_i Vbar_i^2)^2: 1 when one node carries
// everything, 1/(2N-1) when uniform. Throws std::runtime_error on an all-zero
// window (v0 = 0).
double aipr(const CircuitTrajectory& traj, double t);

}  // namespace nrssh
