#include "nrssh/circuit_dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "nrssh/eigen.hpp"
#include "nrssh/oracle.hpp"

namespace nrssh {

CircuitInitialState prepare_initial_state(const CircuitDesign& d, double v0) {
    if (!std::isfinite(v0) || v0 < 0.0)
        throw std::invalid_argument("prepare_initial_state: v0 must be finite and non-negative");
    const std::size_t dim = static_cast<std::size_t>(d.dim());
    CircuitInitialState init;
    init.v.assign(dim, 0.0);
    init.v[0] = v0;
    init.vdot.assign(dim, 0.0);
    return init;
}

ModalSolution modal_solve(const CircuitDesign& d, const ModelParams& p, std::span<const double> v0,
                          std::span<const double> vdot0) {
    const std::size_t dim = static_cast<std::size_t>(p.dim());
    if (v0.size() != dim || vdot0.size() != dim)
        throw std::invalid_argument("modal_solve: initial condition has wrong length");
    if (d.params.nu != p.nu || d.params.kappa1 != p.kappa1 || d.params.kappa2 != p.kappa2 ||
        d.params.n_cells != p.n_cells)
        throw std::invalid_argument("modal_solve: design was synthesized for other parameters");

    const EigenSystem es = eigensystem(p);
    const double lc = d.ref_L * d.ref_C;

    ModalSolution ms;
    ms.omega0 = d.omega0;
    ms.eigvecs = es.right_vectors;
    ms.omegas.resize(dim);
    ms.omega_ratios.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const double eps = lc / p.nu * es.energies[s];    // eigenvalue of scriptH
        const double denom = d.lambda * lc - eps;
        if (!(denom > 0.0))
            throw std::runtime_error("modal_solve: unrealizable modal frequency (lambda too small)");
        ms.omegas[s] = 1.0 / std::sqrt(denom);
        ms.omega_ratios[s] = 1.0 / std::sqrt(d.lambda - es.energies[s] / p.nu);
    }

    // M^-1 = Phi^T S^-1, exact for this basis
    ms.alphas.resize(dim);
    ms.betas.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            a += es.hermitian_vectors(i, s) * v0[i] / es.scaling[i];
            b += es.hermitian_vectors(i, s) * vdot0[i] / es.scaling[i];
        }
        ms.alphas[s] = a;
        ms.betas[s] = b / ms.omegas[s];
    }
    return ms;
}

CircuitTrajectory evaluate(const ModalSolution& ms, rvec times) {
    const std::size_t dim = ms.omegas.size();
    CircuitTrajectory traj;
    traj.voltages = RMat(times.size(), dim);
    rvec modal(dim);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double tau = times[k];
        for (std::size_t s = 0; s < dim; ++s) {
            const double phase = ms.omega_ratios[s] * tau;
            modal[s] = ms.alphas[s] * std::cos(phase) + ms.betas[s] * std::sin(phase);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (std::size_t s = 0; s < dim; ++s) acc += ms.eigvecs(i, s) * modal[s];
            traj.voltages(k, i) = acc;
        }
    }
    traj.times = std::move(times);
    return traj;
}

FirstOrderState first_order_propagate(const CircuitDesign& d, const ModelParams& p,
                                      std::span<const double> v0, std::span<const double> vdot0,
                                      double tau) {
    const std::size_t dim = static_cast<std::size_t>(p.dim());
    if (v0.size() != dim || vdot0.size() != dim)
        throw std::invalid_argument("first_order_propagate: initial condition has wrong length");

    // dimensionless coefficient block K = ((1/nu) H - lambda I)^-1
    RMat coeff = build_hamiltonian(p).to_dense();
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) coeff(i, j) /= p.nu;
        coeff(i, i) -= d.lambda;
    }
    const RMat k = oracle::invert(coeff);

    RMat block(2 * dim, 2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        block(i, dim + i) = tau;
        for (std::size_t j = 0; j < dim; ++j) block(dim + i, j) = k(i, j) * tau;
    }
    const RMat prop = oracle::expm(block);

    rvec z0(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        z0[i] = v0[i];
        z0[dim + i] = vdot0[i] / d.omega0;
    }
    const rvec z = matvec(prop, z0);

    FirstOrderState out;
    out.v.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(dim));
    out.w_tau.assign(z.begin() + static_cast<std::ptrdiff_t>(dim), z.end());
    return out;
}

namespace {

// trapezoid of |V_i| over the samples in [t/2, t]
std::pair<rvec, double> abs_trapezoid(const CircuitTrajectory& traj, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("average window end must be positive");
    const double lo = 0.5 * t, hi = t;
    const double slack = 1e-9 * t;
    const auto& times = traj.times;
    std::size_t i0 = times.size(), i1 = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] >= lo - slack) { i0 = k; break; }
    }
    for (std::size_t k = times.size(); k-- > 0;) {
        if (times[k] <= hi + slack) { i1 = k; break; }
    }
    if (i0 >= times.size() || i1 <= i0 || i1 - i0 < 100)
        throw std::invalid_argument(
            "average window [t/2, t] is not covered by at least 101 trajectory samples");
    if (times[i0] > lo + 0.01 * (hi - lo) || times[i1] < hi - 0.01 * (hi - lo))
        throw std::invalid_argument("trajectory samples do not span the averaging window");

    const std::size_t dim = traj.voltages.cols();
    rvec integral(dim, 0.0);
    for (std::size_t k = i0; k < i1; ++k) {
        const double h = times[k + 1] - times[k];
        for (std::size_t i = 0; i < dim; ++i)
            integral[i] += 0.5 * h *
                           (std::abs(traj.voltages(k, i)) + std::abs(traj.voltages(k + 1, i)));
    }
    return {std::move(integral), times[i1] - times[i0]};
}

}  // namespace

rvec average_profile(const CircuitTrajectory& traj, double t) {
    auto [integral, span] = abs_trapezoid(traj, t);
    (void)span;
    for (auto& x : integral) x *= 2.0 / t;
    return integral;
}

double aipr(const CircuitTrajectory& traj, double t) {
    const rvec vbar = average_profile(traj, t);
    double num = 0.0, den = 0.0;
    for (double x : vbar) {
        num += x * x * x * x;
        den += x * x;
    }
    if (den == 0.0)
        throw std::runtime_error("aipr: time-averaged voltages are all zero");
    return num / (den * den);
}

}  // namespace nrssh
