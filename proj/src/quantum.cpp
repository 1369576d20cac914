#include "nrssh/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace nrssh {

namespace {

void check_psi0(std::span<const std::complex<double>> psi0, std::size_t d) {
    if (psi0.size() != d) throw std::invalid_argument("psi0 has wrong length");
    if (psi0[0] == std::complex<double>{})
        throw std::invalid_argument("psi0[0] must be nonzero (intensity normalization)");
}

// spectral coefficients c_s = phi_s . (S^-1 psi0)
cvec spectral_coefficients(const EigenSystem& es, std::span<const std::complex<double>> psi0) {
    const std::size_t d = static_cast<std::size_t>(es.dim());
    cvec scaled(d);
    for (std::size_t i = 0; i < d; ++i) scaled[i] = psi0[i] / es.scaling[i];
    cvec c(d);
    for (std::size_t s = 0; s < d; ++s) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < d; ++i) acc += es.hermitian_vectors(i, s) * scaled[i];
        c[s] = acc;
    }
    return c;
}

cvec state_at(const EigenSystem& es, const cvec& coeff, double t) {
    const std::size_t d = static_cast<std::size_t>(es.dim());
    cvec phased(d);
    for (std::size_t s = 0; s < d; ++s)
        phased[s] = std::polar(1.0, -es.energies[s] * t) * coeff[s];
    cvec psi(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::complex<double> acc{};
        for (std::size_t s = 0; s < d; ++s) acc += es.hermitian_vectors(i, s) * phased[s];
        psi[i] = es.scaling[i] * acc;
    }
    return psi;
}

}  // namespace

QuantumTrajectory evolve(const ModelParams& p, std::span<const std::complex<double>> psi0,
                         rvec times) {
    const EigenSystem es = eigensystem(p);
    const std::size_t d = static_cast<std::size_t>(es.dim());
    check_psi0(psi0, d);
    if (times.empty()) throw std::invalid_argument("evolve: empty time grid");
    if (times.front() != 0.0) throw std::invalid_argument("evolve: times must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] < times[k - 1]) throw std::invalid_argument("evolve: times must be ascending");

    const cvec coeff = spectral_coefficients(es, psi0);
    const double inv_i0 = 1.0 / std::norm(psi0[0]);

    QuantumTrajectory traj;
    traj.params = p;
    traj.states = CMat(times.size(), d);
    traj.intensities = RMat(times.size(), d);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const cvec psi = (times[k] == 0.0) ? cvec(psi0.begin(), psi0.end())
                                           : state_at(es, coeff, times[k]);
        for (std::size_t i = 0; i < d; ++i) {
            traj.states(k, i) = psi[i];
            traj.intensities(k, i) = std::norm(psi[i]) * inv_i0;
        }
    }
    traj.times = std::move(times);
    return traj;
}

ThreeStepDecomposition three_step_decomposition(const ModelParams& p,
                                                std::span<const std::complex<double>> psi0,
                                                double t) {
    const EigenSystem es = eigensystem(p);
    const std::size_t d = static_cast<std::size_t>(es.dim());
    check_psi0(psi0, d);

    ThreeStepDecomposition out;
    out.scaled_input.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.scaled_input[i] = psi0[i] / es.scaling[i];

    cvec c(d);
    for (std::size_t s = 0; s < d; ++s) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < d; ++i) acc += es.hermitian_vectors(i, s) * out.scaled_input[i];
        c[s] = std::polar(1.0, -es.energies[s] * t) * acc;
    }
    out.hermitian_evolved.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::complex<double> acc{};
        for (std::size_t s = 0; s < d; ++s) acc += es.hermitian_vectors(i, s) * c[s];
        out.hermitian_evolved[i] = acc;
    }
    out.rescaled_output.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        out.rescaled_output[i] = es.scaling[i] * out.hermitian_evolved[i];
    return out;
}

rvec end_survival(const QuantumTrajectory& traj) {
    if (traj.times.empty()) throw std::invalid_argument("end_survival: empty trajectory");
    rvec out(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) out[k] = traj.intensities(k, 0);
    return out;
}

}  // namespace nrssh
