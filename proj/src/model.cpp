#include "nrssh/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nrssh {

void ModelParams::validate() const {
    if (!std::isfinite(nu) || !std::isfinite(kappa1) || !std::isfinite(kappa2))
        throw std::invalid_argument("model parameters must be finite");
    if (nu <= 0.0)
        throw std::invalid_argument("nu must be positive (it is the energy unit)");
    if (kappa1 == 0.0 || kappa2 == 0.0)
        throw std::invalid_argument("kappa1 and kappa2 must be nonzero (S would be singular)");
    if (kappa1 * kappa2 <= 0.0)
        throw std::invalid_argument("kappa1*kappa2 must be positive (real-spectrum regime)");
    if (n_cells < 2)
        throw std::invalid_argument("n_cells must be at least 2");
}

DerivedParams derived(const ModelParams& p) {
    p.validate();
    return DerivedParams{std::sqrt(p.kappa1 * p.kappa2), std::sqrt(p.kappa1 / p.kappa2)};
}

rvec SimilarityScaling::apply(const rvec& v) const {
    if (v.size() != entries.size()) throw std::invalid_argument("similarity: size mismatch");
    rvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = entries[i] * v[i];
    return out;
}

rvec SimilarityScaling::apply_inverse(const rvec& v) const {
    if (v.size() != entries.size()) throw std::invalid_argument("similarity: size mismatch");
    rvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / entries[i];
    return out;
}

cvec SimilarityScaling::apply(const cvec& v) const {
    if (v.size() != entries.size()) throw std::invalid_argument("similarity: size mismatch");
    cvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = entries[i] * v[i];
    return out;
}

cvec SimilarityScaling::apply_inverse(const cvec& v) const {
    if (v.size() != entries.size()) throw std::invalid_argument("similarity: size mismatch");
    cvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / entries[i];
    return out;
}

Tridiagonal build_hamiltonian(const ModelParams& p) {
    p.validate();
    const std::size_t d = static_cast<std::size_t>(p.dim());
    Tridiagonal h;
    h.dim = d;
    h.diag.assign(d, 0.0);
    h.super.resize(d - 1);
    h.sub.resize(d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        if (i % 2 == 0) {   // A_n <-> B_n bond, reciprocal
            h.super[i] = p.nu;
            h.sub[i] = p.nu;
        } else {            // B_n <-> A_{n+1} bond, nonreciprocal
            h.super[i] = p.kappa1;
            h.sub[i] = p.kappa2;
        }
    }
    return h;
}

Tridiagonal build_hermitian_counterpart(const ModelParams& p) {
    p.validate();
    const DerivedParams dp = derived(p);
    const double kappa_eff = p.kappa1 / dp.r;  // sign(kappa1) * kappa
    const std::size_t d = static_cast<std::size_t>(p.dim());
    Tridiagonal h;
    h.dim = d;
    h.diag.assign(d, 0.0);
    h.super.resize(d - 1);
    h.sub.resize(d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double v = (i % 2 == 0) ? p.nu : kappa_eff;
        h.super[i] = v;
        h.sub[i] = v;
    }
    return h;
}

SimilarityScaling build_similarity(const ModelParams& p) {
    const DerivedParams dp = derived(p);
    const std::size_t d = static_cast<std::size_t>(p.dim());
    SimilarityScaling s;
    s.entries.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        s.entries[i] = std::pow(dp.r, -static_cast<double>(i / 2));
    if (s.entries.back() == 0.0 || !std::isfinite(s.entries.back()) ||
        !std::isfinite(1.0 / s.entries.back()))
        throw std::runtime_error("similarity scaling under/overflows for these parameters");
    return s;
}

cvec analytic_zero_mode(const ModelParams& p) {
    p.validate();
    const std::size_t d = static_cast<std::size_t>(p.dim());
    rvec amp(d, 0.0);
    double a = 1.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; i += 2) {
        amp[i] = a;
        norm2 += a * a;
        a *= -p.nu / p.kappa1;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    cvec out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = amp[i] * inv;
    return out;
}

EndStateInfo has_left_end_state(const ModelParams& p) {
    p.validate();
    return EndStateInfo{std::abs(p.kappa1 * p.kappa2) > p.nu * p.nu,
                        std::abs(p.nu / p.kappa1)};
}

}  // namespace nrssh
