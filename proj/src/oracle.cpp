#include "nrssh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nrssh::oracle {

namespace {

template <typename T>
void check_dim(const Mat<T>& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": square matrix required");
    if (a.rows() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
    if (a.rows() > kMaxDim) throw std::invalid_argument(std::string(who) + ": dimension exceeds 128");
}

template <typename T>
double one_norm(const Mat<T>& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Solve a x = b for several right-hand sides (columns of b), in-place LU with
// partial pivoting.
template <typename T>
Mat<T> lu_solve(Mat<T> a, Mat<T> b) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double big = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > big) { big = std::abs(a(i, k)); piv = i; }
        if (big == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        const T d = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T f = a(i, k) / d;
            if (f == T{}) continue;
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T s = b(k, j);
            for (std::size_t m = k + 1; m < n; ++m) s -= a(k, m) * b(m, j);
            b(k, j) = s / a(k, k);
        }
    }
    return b;
}

// Pade(13,13) coefficients
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

template <typename T>
Mat<T> expm_impl(Mat<T> a) {
    check_dim(a, "expm");
    const std::size_t n = a.rows();
    constexpr double theta13 = 5.371920351148152;

    int squarings = 0;
    const double nrm = one_norm(a);
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        const double scale = std::ldexp(1.0, -squarings);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) *= scale;
    }

    const Mat<T> ident = Mat<T>::identity(n);
    const Mat<T> a2 = matmul(a, a);
    const Mat<T> a4 = matmul(a2, a2);
    const Mat<T> a6 = matmul(a2, a4);

    auto lincomb = [&](double c6, const Mat<T>& m6, double c4, const Mat<T>& m4,
                       double c2, const Mat<T>& m2, double c0) {
        Mat<T> r(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) = c6 * m6(i, j) + c4 * m4(i, j) + c2 * m2(i, j) +
                          (i == j ? T{c0} : T{});
        return r;
    };

    const Mat<T> u_inner = lincomb(kPade13[13], a6, kPade13[11], a4, kPade13[9], a2, 0.0);
    Mat<T> u_poly = matmul(a6, u_inner);
    {
        const Mat<T> tail = lincomb(kPade13[7], a6, kPade13[5], a4, kPade13[3], a2, kPade13[1]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) u_poly(i, j) += tail(i, j);
    }
    const Mat<T> u = matmul(a, u_poly);

    const Mat<T> v_inner = lincomb(kPade13[12], a6, kPade13[10], a4, kPade13[8], a2, 0.0);
    Mat<T> v = matmul(a6, v_inner);
    {
        const Mat<T> tail = lincomb(kPade13[6], a6, kPade13[4], a4, kPade13[2], a2, kPade13[0]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v(i, j) += tail(i, j);
    }

    Mat<T> num(n, n), den(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            num(i, j) = v(i, j) + u(i, j);
            den(i, j) = v(i, j) - u(i, j);
        }
    Mat<T> r = lu_solve(std::move(den), std::move(num));
    for (int k = 0; k < squarings; ++k) r = matmul(r, r);
    return r;
}

}  // namespace

RMat expm(const RMat& a) { return expm_impl(a); }
CMat expm(const CMat& a) { return expm_impl(a); }

std::pair<rvec, RMat> dense_eig_sym(const RMat& a_in) {
    check_dim(a_in, "dense_eig_sym");
    const std::size_t n = a_in.rows();

    double amax = max_abs(a_in);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            asym = std::max(asym, std::abs(a_in(i, j) - a_in(j, i)));
    if (amax > 0.0 && asym > 1e-12 * amax)
        throw std::invalid_argument("dense_eig_sym: matrix is not symmetric");

    RMat a = a_in;
    RMat vmat = RMat::identity(n);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(2.0 * off) <= 1e-15 * std::max(amax, 1e-300) * n) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vmat(k, p), vkq = vmat(k, q);
                    vmat(k, p) = c * vkp - s * vkq;
                    vmat(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    rvec values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    rvec sorted(n);
    RMat vecs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted[j] = values[idx[j]];
        for (std::size_t i = 0; i < n; ++i) vecs(i, j) = vmat(i, idx[j]);
    }
    // deterministic sign: first significant component positive
    for (std::size_t j = 0; j < n; ++j) {
        double cmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) cmax = std::max(cmax, std::abs(vecs(i, j)));
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(vecs(i, j)) > 1e-12 * cmax) {
                if (vecs(i, j) < 0.0)
                    for (std::size_t k = 0; k < n; ++k) vecs(k, j) = -vecs(k, j);
                break;
            }
        }
    }
    return {std::move(sorted), std::move(vecs)};
}

RMat invert(const RMat& a) {
    check_dim(a, "invert");
    return lu_solve(a, RMat::identity(a.rows()));
}

SecondOrderTrajectory rk4_second_order(const RMat& coeff, const rvec& v0, const rvec& vdot0,
                                       double t_end, double dt, std::size_t stride) {
    check_dim(coeff, "rk4_second_order");
    const std::size_t n = coeff.rows();
    if (v0.size() != n || vdot0.size() != n)
        throw std::invalid_argument("rk4_second_order: initial condition has wrong length");
    if (!(dt > 0.0) || !(t_end >= 0.0))
        throw std::invalid_argument("rk4_second_order: need dt > 0 and t_end >= 0");
    if (stride == 0) stride = 1;

    const RMat minv = invert(coeff);

    const std::size_t steps =
        (t_end == 0.0) ? 0 : static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    const double h = (steps == 0) ? 0.0 : t_end / static_cast<double>(steps);

    rvec v = v0, w = vdot0;
    auto accel = [&](const rvec& y) { return matvec(minv, y); };

    SecondOrderTrajectory out;
    const std::size_t n_stored = steps / stride + ((steps % stride) ? 2 : 1);
    out.times.reserve(n_stored);
    out.v = RMat(n_stored, n);
    out.w = RMat(n_stored, n);
    std::size_t row = 0;
    auto store = [&](double t) {
        out.times.push_back(t);
        for (std::size_t i = 0; i < n; ++i) {
            out.v(row, i) = v[i];
            out.w(row, i) = w[i];
        }
        ++row;
    };
    store(0.0);

    rvec k1v(n), k1w(n), k2v(n), k2w(n), k3v(n), k3w(n), k4v(n), k4w(n), tv(n);
    for (std::size_t step = 1; step <= steps; ++step) {
        k1v = w;
        k1w = accel(v);
        for (std::size_t i = 0; i < n; ++i) tv[i] = v[i] + 0.5 * h * k1v[i];
        k2w = accel(tv);
        for (std::size_t i = 0; i < n; ++i) k2v[i] = w[i] + 0.5 * h * k1w[i];
        for (std::size_t i = 0; i < n; ++i) tv[i] = v[i] + 0.5 * h * k2v[i];
        k3w = accel(tv);
        for (std::size_t i = 0; i < n; ++i) k3v[i] = w[i] + 0.5 * h * k2w[i];
        for (std::size_t i = 0; i < n; ++i) tv[i] = v[i] + h * k3v[i];
        k4w = accel(tv);
        for (std::size_t i = 0; i < n; ++i) k4v[i] = w[i] + h * k3w[i];
        for (std::size_t i = 0; i < n; ++i) {
            v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            w[i] += h / 6.0 * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
        }
        if (step % stride == 0 || step == steps) store(h * static_cast<double>(step));
    }
    return out;
}

}  // namespace nrssh::oracle
