// extern-C layer: opaque handles over the C++ core, exceptions mapped to
// status codes with a thread-local message.

#include "nrssh.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "nrssh/circuit.hpp"
#include "nrssh/circuit_dynamics.hpp"
#include "nrssh/eigen.hpp"
#include "nrssh/model.hpp"
#include "nrssh/quantum.hpp"

struct nrssh_model {
    nrssh::ModelParams params;
};

struct nrssh_eigen {
    nrssh::EigenSystem es;
};

struct nrssh_circuit {
    nrssh::CircuitDesign design;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
nrssh_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return NRSSH_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return NRSSH_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return NRSSH_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NRSSH_ERR_NUMERICAL;
    }
}

nrssh::cvec make_complex(const double* re, const double* im, std::size_t n) {
    nrssh::cvec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im ? im[i] : 0.0};
    return v;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

nrssh_status require(bool ok, const char* msg) {
    if (!ok) {
        g_last_error = msg;
        return NRSSH_ERR_INVALID;
    }
    return NRSSH_OK;
}

nrssh::CircuitTrajectory evolve_circuit(const nrssh_circuit* c, double v0, nrssh::rvec times) {
    const auto init = nrssh::prepare_initial_state(c->design, v0);
    const auto ms = nrssh::modal_solve(c->design, c->design.params, init.v, init.vdot);
    return nrssh::evaluate(ms, std::move(times));
}

nrssh::CircuitTrajectory window_trajectory(const nrssh_circuit* c, double v0, double t,
                                           double tau_step) {
    if (!(t > 0.0) || !(tau_step > 0.0))
        throw std::invalid_argument("average window end and step must be positive");
    const std::size_t n = static_cast<std::size_t>(std::ceil(0.5 * t / tau_step - 1e-9));
    nrssh::rvec times(n + 1);
    const double h = 0.5 * t / static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) times[k] = 0.5 * t + h * static_cast<double>(k);
    return evolve_circuit(c, v0, std::move(times));
}

}  // namespace

extern "C" {

const char* nrssh_last_error(void) { return g_last_error.c_str(); }

void nrssh_string_free(char* s) { delete[] s; }

nrssh_status nrssh_model_create(double nu, double kappa1, double kappa2, int n_cells,
                                nrssh_model** out) {
    if (auto st = require(out != nullptr, "out pointer is null")) return st;
    *out = nullptr;
    return guarded([&] {
        nrssh::ModelParams p{nu, kappa1, kappa2, n_cells};
        p.validate();
        *out = new nrssh_model{p};
    });
}

void nrssh_model_free(nrssh_model* m) { delete m; }

int nrssh_model_dim(const nrssh_model* m) { return m ? m->params.dim() : 0; }

double nrssh_model_kappa(const nrssh_model* m) {
    return m ? nrssh::derived(m->params).kappa : 0.0;
}

double nrssh_model_skin_ratio(const nrssh_model* m) {
    return m ? nrssh::derived(m->params).r : 0.0;
}

nrssh_status nrssh_model_hamiltonian(const nrssh_model* m, double* out) {
    if (auto st = require(m && out, "null argument")) return st;
    return guarded([&] {
        const nrssh::RMat h = nrssh::build_hamiltonian(m->params).to_dense();
        std::memcpy(out, h.data(), sizeof(double) * h.rows() * h.cols());
    });
}

nrssh_status nrssh_model_zero_mode(const nrssh_model* m, double* out) {
    if (auto st = require(m && out, "null argument")) return st;
    return guarded([&] {
        const nrssh::cvec v = nrssh::analytic_zero_mode(m->params);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
    });
}

int nrssh_model_has_left_end_state(const nrssh_model* m, double* decay_ratio) {
    if (!m) return 0;
    const nrssh::EndStateInfo info = nrssh::has_left_end_state(m->params);
    if (decay_ratio) *decay_ratio = info.decay_ratio;
    return info.exists ? 1 : 0;
}

nrssh_status nrssh_eigen_create(const nrssh_model* m, nrssh_eigen** out) {
    if (auto st = require(m && out, "null argument")) return st;
    *out = nullptr;
    return guarded([&] { *out = new nrssh_eigen{nrssh::eigensystem(m->params)}; });
}

void nrssh_eigen_free(nrssh_eigen* e) { delete e; }

nrssh_status nrssh_eigen_energies(const nrssh_eigen* e, double* out) {
    if (auto st = require(e && out, "null argument")) return st;
    return guarded([&] {
        std::memcpy(out, e->es.energies.data(), sizeof(double) * e->es.energies.size());
    });
}

nrssh_status nrssh_eigen_right_vectors(const nrssh_eigen* e, double* out) {
    if (auto st = require(e && out, "null argument")) return st;
    return guarded([&] {
        const auto& m = e->es.right_vectors;
        std::memcpy(out, m.data(), sizeof(double) * m.rows() * m.cols());
    });
}

nrssh_status nrssh_eigen_left_vectors(const nrssh_eigen* e, double* out) {
    if (auto st = require(e && out, "null argument")) return st;
    return guarded([&] {
        const auto& m = e->es.left_vectors;
        std::memcpy(out, m.data(), sizeof(double) * m.rows() * m.cols());
    });
}

nrssh_status nrssh_eigen_weights(const nrssh_eigen* e, const double* psi0_re,
                                 const double* psi0_im, double* out) {
    if (auto st = require(e && psi0_re && out, "null argument")) return st;
    return guarded([&] {
        const auto psi0 =
            make_complex(psi0_re, psi0_im, static_cast<std::size_t>(e->es.dim()));
        const nrssh::rvec w = nrssh::initial_state_weights(e->es, psi0);
        std::memcpy(out, w.data(), sizeof(double) * w.size());
    });
}

nrssh_status nrssh_evolve(const nrssh_model* m, const double* psi0_re, const double* psi0_im,
                          const double* times, size_t n_times, double* intensities,
                          double* states_re, double* states_im) {
    if (auto st = require(m && psi0_re && times && intensities, "null argument")) return st;
    return guarded([&] {
        const std::size_t dim = static_cast<std::size_t>(m->params.dim());
        const auto psi0 = make_complex(psi0_re, psi0_im, dim);
        const nrssh::QuantumTrajectory traj =
            nrssh::evolve(m->params, psi0, nrssh::rvec(times, times + n_times));
        std::memcpy(intensities, traj.intensities.data(), sizeof(double) * n_times * dim);
        if (states_re || states_im) {
            for (std::size_t k = 0; k < n_times; ++k)
                for (std::size_t i = 0; i < dim; ++i) {
                    if (states_re) states_re[k * dim + i] = traj.states(k, i).real();
                    if (states_im) states_im[k * dim + i] = traj.states(k, i).imag();
                }
        }
    });
}

nrssh_status nrssh_default_lambda(const nrssh_model* m, double* out) {
    if (auto st = require(m && out, "null argument")) return st;
    return guarded([&] { *out = nrssh::default_lambda(m->params); });
}

nrssh_status nrssh_circuit_create(const nrssh_model* m, double lambda, double ref_L,
                                  double ref_C, nrssh_circuit** out) {
    if (auto st = require(m && out, "null argument")) return st;
    *out = nullptr;
    return guarded([&] {
        *out = new nrssh_circuit{nrssh::synthesize(m->params, lambda, ref_L, ref_C)};
    });
}

void nrssh_circuit_free(nrssh_circuit* c) { delete c; }

double nrssh_circuit_omega0(const nrssh_circuit* c) { return c ? c->design.omega0 : 0.0; }

double nrssh_circuit_lambda(const nrssh_circuit* c) { return c ? c->design.lambda : 0.0; }

nrssh_status nrssh_circuit_components(const nrssh_circuit* c, double* c_a, double* c_b,
                                      double* d_a, double* d_b, double* l_a, double* l_b) {
    if (auto st = require(c != nullptr, "null argument")) return st;
    const std::size_t n = static_cast<std::size_t>(c->design.params.n_cells);
    const auto copy = [n](double* dst, const nrssh::rvec& src) {
        if (dst) std::memcpy(dst, src.data(), sizeof(double) * n);
    };
    copy(c_a, c->design.C_A);
    copy(c_b, c->design.C_B);
    copy(d_a, c->design.D_A);
    copy(d_b, c->design.D_B);
    copy(l_a, c->design.L_A);
    copy(l_b, c->design.L_B);
    return NRSSH_OK;
}

nrssh_status nrssh_circuit_component_csv(const nrssh_circuit* c, char** out_text) {
    if (auto st = require(c && out_text, "null argument")) return st;
    return guarded([&] { *out_text = dup_string(nrssh::component_table_csv(c->design)); });
}

nrssh_status nrssh_circuit_netlist(const nrssh_circuit* c, double v0, char** out_text) {
    if (auto st = require(c && out_text, "null argument")) return st;
    return guarded([&] { *out_text = dup_string(nrssh::export_netlist(c->design, v0)); });
}

nrssh_status nrssh_circuit_evolve(const nrssh_circuit* c, double v0, const double* times,
                                  size_t n_times, double* voltages) {
    if (auto st = require(c && times && voltages, "null argument")) return st;
    return guarded([&] {
        const auto traj = evolve_circuit(c, v0, nrssh::rvec(times, times + n_times));
        const std::size_t dim = static_cast<std::size_t>(c->design.dim());
        std::memcpy(voltages, traj.voltages.data(), sizeof(double) * n_times * dim);
    });
}

nrssh_status nrssh_circuit_average_profile(const nrssh_circuit* c, double v0, double t,
                                           double tau_step, double* profile) {
    if (auto st = require(c && profile, "null argument")) return st;
    return guarded([&] {
        const auto traj = window_trajectory(c, v0, t, tau_step);
        const nrssh::rvec vbar = nrssh::average_profile(traj, t);
        std::memcpy(profile, vbar.data(), sizeof(double) * vbar.size());
    });
}

nrssh_status nrssh_circuit_aipr(const nrssh_circuit* c, double v0, double t, double tau_step,
                                double* out) {
    if (auto st = require(c && out, "null argument")) return st;
    return guarded([&] {
        const auto traj = window_trajectory(c, v0, t, tau_step);
        *out = nrssh::aipr(traj, t);
    });
}

}  // extern "C"
