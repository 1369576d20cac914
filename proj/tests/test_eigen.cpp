#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nrssh/eigen.hpp"
#include "nrssh/oracle.hpp"

using namespace nrssh;

TEST_CASE("tridiagonal QL: 3-site chain") {
    auto [vals, vecs] = eigh_tridiagonal({0, 0, 0}, {1, 2});
    CHECK(vals[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
    CHECK(vals[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(vals[2] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("tridiagonal QL: 1x1") {
    auto [vals, vecs] = eigh_tridiagonal({0}, {});
    CHECK(vals[0] == 0.0);
    CHECK(vecs(0, 0) == 1.0);
}

TEST_CASE("tridiagonal QL vs dense reference at 39 sites") {
    const Tridiagonal hh = build_hermitian_counterpart({1, 4, 1, 20});
    auto [vals, vecs] = eigh_tridiagonal(hh.diag, hh.super);
    auto [dvals, dvecs] = oracle::dense_eig_sym(hh.to_dense());

    double dmax = 0.0;
    for (std::size_t i = 0; i < 39; ++i) dmax = std::max(dmax, std::abs(vals[i] - dvals[i]));
    CHECK(dmax < 1e-10);

    // orthonormality to 1e-12
    for (std::size_t a = 0; a < 39; ++a)
        for (std::size_t b = a; b < 39; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < 39; ++i) dot += vecs(i, a) * vecs(i, b);
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-12);
        }

    // eigen residual to 1e-10 * ||H||
    const RMat dense = hh.to_dense();
    const double scale = max_abs(dense);
    for (std::size_t s = 0; s < 39; ++s) {
        cvec col(39);
        for (std::size_t i = 0; i < 39; ++i) col[i] = vecs(i, s);
        CHECK(testutil::inf_norm_residual(dense, col, vals[s]) < 1e-10 * scale);
    }
}

TEST_CASE("eigensystem of the toy chain is isospectral to its symmetric partner") {
    const EigenSystem es = eigensystem({1, 4, 1, 2});
    CHECK(es.energies[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-14));
    CHECK(es.energies[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(es.energies[2] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("isospectrality of the two spectrally-paired parameter sets") {
    const EigenSystem a = eigensystem({1, 1, 0.25, 20});
    const EigenSystem b = eigensystem({1, 0.5, 0.5, 20});
    CHECK(testutil::max_abs_diff(a.energies, b.energies) < 1e-10);
}

TEST_CASE("spectral symmetry about zero; E=0 always present") {
    for (const ModelParams p : {ModelParams{1, 4, 1, 20}, ModelParams{1, 0.7, 1.9, 11}}) {
        const EigenSystem es = eigensystem(p);
        const std::size_t d = es.energies.size();
        for (std::size_t s = 0; s < d; ++s)
            CHECK(std::abs(es.energies[s] + es.energies[d - 1 - s]) < 1e-10);
        CHECK(std::abs(es.energies[d / 2]) < 1e-10);
    }
}

TEST_CASE("right eigenvectors satisfy H psi = E psi; biorthonormality") {
    const ModelParams p{1, 4, 1, 20};
    const EigenSystem es = eigensystem(p);
    const RMat h = build_hamiltonian(p).to_dense();
    const std::size_t d = 39;
    const double scale = max_abs(h);
    for (std::size_t s = 0; s < d; ++s) {
        cvec col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = es.right_vectors(i, s);
        CHECK(testutil::inf_norm_residual(h, col, es.energies[s]) < 1e-8 * scale);
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) dot += es.left_vectors(a, i) * es.right_vectors(i, b);
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("right vectors are S phi entrywise; bulk states pile up left") {
    const ModelParams p{1, 4, 1, 20};
    const EigenSystem es = eigensystem(p);
    const std::size_t d = 39;
    for (std::size_t s = 0; s < d; ++s)
        for (std::size_t i = 0; i < d; ++i)
            CHECK(std::abs(es.right_vectors(i, s) -
                           es.scaling[i] * es.hermitian_vectors(i, s)) < 1e-10);

    // every bulk right eigenvector keeps >= 99% of its squared norm in the
    // left half (first 20 of 39 sites)
    const std::size_t zero_idx = d / 2;
    for (std::size_t s = 0; s < d; ++s) {
        if (s == zero_idx) continue;
        double left = 0.0, total = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double a2 = es.right_vectors(i, s) * es.right_vectors(i, s);
            total += a2;
            if (i < 20) left += a2;
        }
        CHECK(left / total >= 0.99);
    }
}

TEST_CASE("initial-state weights") {
    const ModelParams p{1, 4, 1, 20};
    const EigenSystem es = eigensystem(p);
    const std::size_t d = 39;

    SUBCASE("a right eigenvector projects onto itself only") {
        for (std::size_t k : {std::size_t{0}, std::size_t{19}, std::size_t{38}}) {
            cvec psi0(d);
            for (std::size_t i = 0; i < d; ++i) psi0[i] = es.right_vectors(i, k);
            const rvec w = initial_state_weights(es, psi0);
            CHECK(w[k] == doctest::Approx(1.0).epsilon(1e-10));
            for (std::size_t s = 0; s < d; ++s)
                if (s != k) CHECK(std::abs(w[s]) < 1e-10);
        }
    }

    SUBCASE("left-end injection: the E=0 mode dominates in the topological case") {
        const rvec w = initial_state_weights(es, testutil::unit_site(d));
        const std::size_t zero_idx = d / 2;
        // oracle value |phi_0[0]| = sqrt(3)/2 up to a 4^-20 finite-size correction
        CHECK(w[zero_idx] == doctest::Approx(0.8660254).epsilon(1e-6));
        for (std::size_t s = 0; s < d; ++s)
            if (s != zero_idx) CHECK(w[s] < w[zero_idx]);
        double sum2 = 0.0;
        for (double x : w) sum2 += x * x;
        CHECK(sum2 == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("left-end injection: weight spreads over bulk in the trivial case") {
        const EigenSystem triv = eigensystem({1, 0.5, 0.5, 20});
        const rvec w = initial_state_weights(triv, testutil::unit_site(39));
        CHECK(w[39 / 2] < 0.01);                       // zero mode nearly absent
        CHECK(*std::max_element(w.begin(), w.end()) < 0.5);
        double sum2 = 0.0;
        for (double x : w) sum2 += x * x;
        CHECK(sum2 == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("weights agree with a dense-reference computation") {
        // rebuild psi_l from the dense Jacobi eigensystem and S
        const Tridiagonal hh = build_hermitian_counterpart(p);
        auto [dvals, dvecs] = oracle::dense_eig_sym(hh.to_dense());
        const SimilarityScaling s = build_similarity(p);
        const cvec psi0 = testutil::unit_site(d);
        rvec g(d);
        double norm2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            double overlap = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                overlap += dvecs(i, k) / s.entries[i] * psi0[i].real();
            g[k] = std::abs(overlap);
            norm2 += g[k] * g[k];
        }
        for (double& x : g) x /= std::sqrt(norm2);
        const rvec w = initial_state_weights(es, psi0);
        CHECK(testutil::max_abs_diff(w, g) < 1e-10);
    }

    SUBCASE("zero input vector is rejected") {
        CHECK_THROWS_AS(initial_state_weights(es, cvec(d)), std::invalid_argument);
    }
}
