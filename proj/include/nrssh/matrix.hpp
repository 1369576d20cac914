#pragma once
// Minimal dense matrix containers for desk-scale problems (dim <= a few
// hundred). Row-major storage, value semantics, no BLAS dependency.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nrssh {

using rvec = std::vector<double>;
using cvec = std::vector<std::complex<double>>;

template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    T* data() { return a_.data(); }
    const T* data() const { return a_.data(); }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using RMat = Mat<double>;
using CMat = Mat<std::complex<double>>;

template <typename T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T, typename U>
auto matvec(const Mat<T>& a, const std::vector<U>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<decltype(T{} * U{})> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        decltype(T{} * U{}) acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <typename T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

template <typename T>
double max_abs(const Mat<T>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double max_abs_diff(const RMat& a, const RMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// Tridiagonal matrix in banded storage; to_dense() exports the full matrix
// for the dense reference routines.
struct Tridiagonal {
    std::size_t dim = 0;
    rvec diag;    // length dim
    rvec super;   // length dim-1, entry i couples (i, i+1)
    rvec sub;     // length dim-1, entry i couples (i+1, i)

    RMat to_dense() const {
        RMat m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = diag[i];
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            m(i, i + 1) = super[i];
            m(i + 1, i) = sub[i];
        }
        return m;
    }

    bool symmetric() const { return super == sub; }
};

}  // namespace nrssh
