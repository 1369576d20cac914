#include "nrssh/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nrssh {

namespace {

// sqrt(a^2+b^2) without spurious over/underflow
double pythag(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL for a symmetric tridiagonal matrix, rotations accumulated
// into z (initialized to identity). Classic EISPACK tql2 recurrence.
void tql_implicit(rvec& d, rvec& e, RMat& z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.push_back(0.0);  // e[i] couples (i, i+1); sentinel simplifies the loop
    constexpr int kMaxIter = 50;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxIter)
                    throw std::runtime_error(
                        "tridiagonal QL did not converge at index " + std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool aborted = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // recover from negligible off-diagonal
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        aborted = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (aborted) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void fix_column_signs(RMat& z) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
        double amax = 0.0;
        for (std::size_t i = 0; i < z.rows(); ++i) amax = std::max(amax, std::abs(z(i, j)));
        const double tol = 1e-12 * amax;
        for (std::size_t i = 0; i < z.rows(); ++i) {
            if (std::abs(z(i, j)) > tol) {
                if (z(i, j) < 0.0)
                    for (std::size_t k = 0; k < z.rows(); ++k) z(k, j) = -z(k, j);
                break;
            }
        }
    }
}

}  // namespace

std::pair<rvec, RMat> eigh_tridiagonal(rvec diag, rvec offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("eigh_tridiagonal: empty matrix");
    if (offdiag.size() != n - 1)
        throw std::invalid_argument("eigh_tridiagonal: offdiag must have length dim-1");

    RMat z = RMat::identity(n);
    tql_implicit(diag, offdiag, z);

    // ascending order, stable in the original index
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

    rvec values(n);
    RMat vectors(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = diag[idx[j]];
        for (std::size_t i = 0; i < n; ++i) vectors(i, j) = z(i, idx[j]);
    }
    fix_column_signs(vectors);
    return {std::move(values), std::move(vectors)};
}

EigenSystem eigensystem(const ModelParams& p) {
    const Tridiagonal hh = build_hermitian_counterpart(p);
    const SimilarityScaling s = build_similarity(p);
    auto [values, phi] = eigh_tridiagonal(hh.diag, hh.super);

    const std::size_t d = hh.dim;
    EigenSystem es;
    es.params = p;
    es.scaling = s.entries;
    es.energies = std::move(values);
    es.right_vectors = RMat(d, d);
    es.left_vectors = RMat(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            es.right_vectors(i, j) = s.entries[i] * phi(i, j);
            es.left_vectors(j, i) = phi(i, j) / s.entries[i];
        }
    es.hermitian_vectors = std::move(phi);
    return es;
}

rvec initial_state_weights(const EigenSystem& es, std::span<const std::complex<double>> psi0) {
    const std::size_t d = static_cast<std::size_t>(es.dim());
    if (psi0.size() != d) throw std::invalid_argument("weights: psi0 has wrong length");
    bool nonzero = false;
    for (const auto& c : psi0) nonzero |= (c != std::complex<double>{});
    if (!nonzero) throw std::invalid_argument("weights: psi0 must be nonzero");

    rvec w(d);
    double norm2 = 0.0;
    for (std::size_t sidx = 0; sidx < d; ++sidx) {
        std::complex<double> overlap{};
        for (std::size_t i = 0; i < d; ++i) overlap += es.left_vectors(sidx, i) * psi0[i];
        const double a = std::abs(overlap);
        w[sidx] = a;
        norm2 += a * a;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : w) x *= inv;
    return w;
}

}  // namespace nrssh
