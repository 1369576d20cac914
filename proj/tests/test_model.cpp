#include <doctest.h>

#include <complex>
#include <stdexcept>

#include "helpers.hpp"
#include "nrssh/model.hpp"

using namespace nrssh;

TEST_CASE("hamiltonian matches the chain layout") {
    const RMat h = build_hamiltonian({1, 4, 1, 2}).to_dense();
    const double expect[3][3] = {{0, 1, 0}, {1, 0, 4}, {0, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h(i, j) == expect[i][j]);
}

TEST_CASE("hamiltonian is symmetric at kappa1 == kappa2") {
    const RMat h = build_hamiltonian({1, 2, 2, 2}).to_dense();
    const double expect[3][3] = {{0, 1, 0}, {1, 0, 2}, {0, 2, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h(i, j) == expect[i][j]);
}

TEST_CASE("hamiltonian at N=20: 39x39, alternating couplings") {
    const Tridiagonal h = build_hamiltonian({1, 4, 1, 20});
    CHECK(h.dim == 39);
    const RMat d = h.to_dense();
    // second row reads (1, 0, 4, 0, ...)
    CHECK(d(1, 0) == 1.0);
    CHECK(d(1, 1) == 0.0);
    CHECK(d(1, 2) == 4.0);
    for (std::size_t j = 3; j < 39; ++j) CHECK(d(1, j) == 0.0);
}

TEST_CASE("sparsity: nothing off the three central diagonals") {
    const RMat d = build_hamiltonian({1.5, 0.7, 2.1, 7}).to_dense();
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && i + 1 != j && j + 1 != i) CHECK(d(i, j) == 0.0);
    for (std::size_t i = 0; i < d.rows(); ++i) CHECK(d(i, i) == 0.0);
}

TEST_CASE("hermitian counterpart") {
    SUBCASE("kappa = sqrt(4*1) = 2") {
        const RMat h = build_hermitian_counterpart({1, 4, 1, 2}).to_dense();
        const double expect[3][3] = {{0, 1, 0}, {1, 0, 2}, {0, 2, 0}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(h(i, j) == doctest::Approx(expect[i][j]).epsilon(1e-15));
    }
    SUBCASE("off-diagonals (1, 0.5) for kappa1=1, kappa2=0.25") {
        const Tridiagonal h = build_hermitian_counterpart({1, 1, 0.25, 2});
        CHECK(h.super[0] == 1.0);
        CHECK(h.super[1] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(h.super == h.sub);
    }
    SUBCASE("fixed point: kappa1 == kappa2 reproduces H entrywise") {
        const RMat a = build_hamiltonian({1, 2, 2, 5}).to_dense();
        const RMat b = build_hermitian_counterpart({1, 2, 2, 5}).to_dense();
        CHECK(max_abs_diff(a, b) == 0.0);
    }
}

TEST_CASE("similarity scaling entries") {
    SUBCASE("r=2, N=3 gives (1, 1, 0.5, 0.5, 0.25)") {
        const SimilarityScaling s = build_similarity({1, 4, 1, 3});
        const rvec expect = {1, 1, 0.5, 0.5, 0.25};
        REQUIRE(s.entries.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) CHECK(s.entries[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    }
    SUBCASE("r=1 is the identity") {
        const SimilarityScaling s = build_similarity({1, 2, 2, 6});
        for (double e : s.entries) CHECK(e == 1.0);
    }
}

static double similarity_defect(const ModelParams& p) {
    const RMat h = build_hamiltonian(p).to_dense();
    const RMat hh = build_hermitian_counterpart(p).to_dense();
    const SimilarityScaling s = build_similarity(p);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) {
            worst = std::max(worst, std::abs(h(i, j) * s.entries[j] / s.entries[i] - hh(i, j)));
            scale = std::max(scale, std::abs(hh(i, j)));
        }
    return worst / scale;
}

TEST_CASE("similarity transform is exact: S^-1 H S = Htilde") {
    // literal route once: assemble the diagonals and multiply
    {
        const ModelParams p{1, 4, 1, 5};
        const SimilarityScaling s = build_similarity(p);
        RMat smat(9, 9), sinv(9, 9);
        for (std::size_t i = 0; i < 9; ++i) {
            smat(i, i) = s.entries[i];
            sinv(i, i) = 1.0 / s.entries[i];
        }
        const RMat lhs = matmul(sinv, matmul(build_hamiltonian(p).to_dense(), smat));
        CHECK(max_abs_diff(lhs, build_hermitian_counterpart(p).to_dense()) < 1e-12);
    }
    CHECK(similarity_defect({1, 4, 1, 5}) < 1e-12);
    CHECK(similarity_defect({1, 1, 0.25, 20}) < 1e-12);
    CHECK(similarity_defect({0.7, 3.3, 0.9, 40}) < 1e-12);
    CHECK(similarity_defect({2, 0.6, 1.9, 13}) < 1e-12);
    // negative pair: the alternating off-diagonal follows sign(kappa1)
    CHECK(similarity_defect({1, -1, -4, 8}) < 1e-12);
}

TEST_CASE("analytic zero mode") {
    SUBCASE("left-localized: proportional to (1, 0, -0.25)") {
        const cvec v = analytic_zero_mode({1, 4, 1, 2});
        CHECK(v[1] == std::complex<double>{});
        CHECK((v[2] / v[0]).real() == doctest::Approx(-0.25).epsilon(1e-15));
    }
    SUBCASE("right-localized: proportional to (1, 0, -2)") {
        const cvec v = analytic_zero_mode({1, 0.5, 0.5, 2});
        CHECK((v[2] / v[0]).real() == doctest::Approx(-2.0).epsilon(1e-15));
    }
    SUBCASE("critical |nu/kappa1| = 1: constant-magnitude A amplitudes") {
        const cvec v = analytic_zero_mode({1, 1, 0.25, 5});
        for (std::size_t i = 0; i < v.size(); i += 2)
            CHECK(std::abs(v[i]) == doctest::Approx(std::abs(v[0])).epsilon(1e-14));
        for (std::size_t i = 1; i < v.size(); i += 2) CHECK(v[i] == std::complex<double>{});
    }
    SUBCASE("unit norm and tiny residual") {
        for (const ModelParams p : {ModelParams{1, 4, 1, 20}, ModelParams{1, 0.3, 2.5, 11},
                                    ModelParams{1, -2, -0.7, 9}}) {
            const cvec v = analytic_zero_mode(p);
            double norm2 = 0.0;
            for (const auto& c : v) norm2 += std::norm(c);
            CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
            const double scale = std::max({p.nu, std::abs(p.kappa1), std::abs(p.kappa2)});
            CHECK(testutil::inf_norm_residual(build_hamiltonian(p).to_dense(), v) <
                  1e-12 * scale);
        }
    }
}

TEST_CASE("non-Bloch end-state criterion") {
    const EndStateInfo a = has_left_end_state({1, 4, 1, 5});
    CHECK(a.exists);
    CHECK(a.decay_ratio == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_FALSE(has_left_end_state({1, 1, 0.25, 5}).exists);
    // strict inequality at the boundary |kappa1*kappa2| = nu^2
    CHECK_FALSE(has_left_end_state({1, 1, 1, 5}).exists);
}

TEST_CASE("parameter validation names the violated constraint") {
    CHECK_THROWS_AS(ModelParams({0, 1, 1, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({-1, 1, 1, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 0, 1, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 1, 0, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 1, -1, 5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 1, 1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(build_hamiltonian({1, 1, 1, 0}), std::invalid_argument);
    CHECK_NOTHROW(ModelParams({1, -1, -4, 2}).validate());  // negative pair is fine
}
