#pragma once
// shared test utilities

#include <cmath>
#include <complex>

#include "nrssh/matrix.hpp"
#include "nrssh/model.hpp"

namespace testutil {

inline double inf_norm_residual(const nrssh::RMat& m, const nrssh::cvec& v,
                                std::complex<double> scale = {}) {
    // max_i | (M v)_i - scale * v_i |
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::complex<double> acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        worst = std::max(worst, std::abs(acc - scale * v[i]));
    }
    return worst;
}

inline double max_abs(const nrssh::rvec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const nrssh::rvec& a, const nrssh::rvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const nrssh::cvec& a, const nrssh::cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline nrssh::cvec unit_site(std::size_t dim, std::size_t site = 0) {
    nrssh::cvec v(dim);
    v[site] = 1.0;
    return v;
}

}  // namespace testutil
