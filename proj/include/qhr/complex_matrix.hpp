#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qhr {

using Complex = std::complex<double>;

/// Library-wide default tolerance for approximate predicates.
inline constexpr double default_tol = 1e-10;

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

/// Dense complex column vector, immutable size, dim >= 1.
class CVector {
  public:
    explicit CVector(std::size_t dim) : e_(dim) {
        detail::require(dim >= 1, "CVector: dim must be >= 1");
    }
    explicit CVector(std::vector<Complex> entries) : e_(std::move(entries)) {
        detail::require(!e_.empty(), "CVector: dim must be >= 1");
    }

    std::size_t dim() const { return e_.size(); }
    Complex& operator[](std::size_t i) { return e_[i]; }
    const Complex& operator[](std::size_t i) const { return e_[i]; }

    double norm() const {
        // two-pass scaled sum, safe against overflow for large dims
        double peak = 0.0;
        for (const auto& z : e_) peak = std::max(peak, std::max(std::abs(z.real()), std::abs(z.imag())));
        if (peak == 0.0) return 0.0;
        double s = 0.0;
        for (const auto& z : e_) {
            const double re = z.real() / peak, im = z.imag() / peak;
            s += re * re + im * im;
        }
        return peak * std::sqrt(s);
    }

    const std::vector<Complex>& entries() const { return e_; }

    static CVector basis(std::size_t dim, std::size_t index) {
        detail::require(index < dim, "CVector::basis: index out of range");
        CVector v(dim);
        v[index] = 1.0;
        return v;
    }

  private:
    std::vector<Complex> e_;
};

/// <a|b> with the first argument conjugated.
inline Complex inner(const CVector& a, const CVector& b) {
    detail::require(a.dim() == b.dim(), "inner: dimension mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Dense complex matrix, row-major storage.
class CMatrix {
  public:
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {
        detail::require(rows >= 1 && cols >= 1, "CMatrix: rows and cols must be >= 1");
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool square() const { return rows_ == cols_; }

    CVector col(std::size_t j) const {
        detail::require(j < cols_, "CMatrix::col: index out of range");
        CVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    const std::vector<Complex>& entries() const { return e_; }
    std::vector<Complex>& entries() { return e_; }

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> e_;
};

inline CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    detail::require(a.cols() == b.rows(), "mat_mul: dimension mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mat_mul(a, b); }

inline CVector mat_vec(const CMatrix& a, const CVector& x) {
    detail::require(a.cols() == x.dim(), "mat_vec: dimension mismatch");
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// Conjugate transpose.
inline CMatrix adjoint(const CMatrix& a) {
    CMatrix b(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
    return b;
}

/// max |a_ij - b_ij|
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

/// max-norm of (a^dag a - I); the unitarity defect.
inline double unitarity_residual(const CMatrix& a) {
    detail::require(a.square(), "unitarity_residual: matrix must be square");
    const std::size_t n = a.rows();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += std::conj(a(k, i)) * a(k, j);
            if (i == j) s -= 1.0;
            m = std::max(m, std::abs(s));
        }
    return m;
}

inline bool is_unitary(const CMatrix& a, double tol = default_tol) {
    detail::require(tol > 0.0, "is_unitary: tol must be positive");
    return unitarity_residual(a) <= tol;
}

/// Determinant via partial-pivot Gaussian elimination.
inline Complex determinant(const CMatrix& a) {
    detail::require(a.square(), "determinant: matrix must be square");
    const std::size_t n = a.rows();
    CMatrix w = a;
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(w(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(w(i, k)) > best) { best = std::abs(w(i, k)); piv = i; }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(w(k, j), w(piv, j));
            det = -det;
        }
        det *= w(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = w(i, k) / w(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return det;
}

/// Sum over all entries of |a_jk - b_jk|; the deviation observable.
inline double l1_deviation(const CMatrix& a, const CMatrix& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "l1_deviation: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::abs(a.entries()[i] - b.entries()[i]);
    return s;
}

}  // namespace qhr
