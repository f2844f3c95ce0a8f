#ifndef DEPICT_MATRIX_HPP
#define DEPICT_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "depict/errors.hpp"

namespace depict {

/// Dense real matrix, column-major, double precision.
///
/// The column-major layout means column j occupies the contiguous range
/// [j*rows, (j+1)*rows) of data(), which every algorithm in the library
/// relies on when walking embeddings column by column.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0.0) {
        if (rows < 0 || cols < 0) throw ShapeMismatch("negative dimension");
    }
    Matrix(int rows, int cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != size_t(rows) * cols)
            throw ShapeMismatch("data length does not match rows*cols");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) { return data_[size_t(j) * rows_ + i]; }
    double operator()(int i, int j) const { return data_[size_t(j) * rows_ + i]; }

    std::span<double> col(int j) { return {data_.data() + size_t(j) * rows_, size_t(rows_)}; }
    std::span<const double> col(int j) const {
        return {data_.data() + size_t(j) * rows_, size_t(rows_)};
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// Copy of the column range [j0, j1).
    Matrix columns(int j0, int j1) const {
        if (j0 < 0 || j1 < j0 || j1 > cols_) throw ShapeMismatch("column range out of bounds");
        Matrix out(rows_, j1 - j0);
        for (int j = j0; j < j1; ++j)
            for (int i = 0; i < rows_; ++i) out(i, j - j0) = (*this)(i, j);
        return out;
    }

    void set_columns(int j0, const Matrix& block) {
        if (block.rows() != rows_ || j0 < 0 || j0 + block.cols() > cols_)
            throw ShapeMismatch("column block does not fit");
        for (int j = 0; j < block.cols(); ++j)
            for (int i = 0; i < rows_; ++i) (*this)(i, j0 + j) = block(i, j);
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

inline void require_shape(const Matrix& m, int rows, int cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) throw ShapeMismatch(what);
}

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.all_finite()) throw NonFinite(what);
}

/// C = A * B
inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matmul inner dimensions");
    Matrix c(a.rows(), b.cols());
    const int m = a.rows(), k = a.cols(), n = b.cols();
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < k; ++l) {
            const double blj = b(l, j);
            if (blj == 0.0) continue;
            for (int i = 0; i < m; ++i) c(i, j) += a(i, l) * blj;
        }
    }
    return c;
}

/// C = A^T * B
inline Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("matmul_tn inner dimensions");
    Matrix c(a.cols(), b.cols());
    const int m = a.cols(), k = a.rows(), n = b.cols();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int l = 0; l < k; ++l) s += a(l, i) * b(l, j);
            c(i, j) = s;
        }
    return c;
}

/// C = A * B^T
inline Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw ShapeMismatch("matmul_nt inner dimensions");
    Matrix c(a.rows(), b.rows());
    const int m = a.rows(), k = a.cols(), n = b.rows();
    for (int l = 0; l < k; ++l)
        for (int j = 0; j < n; ++j) {
            const double bjl = b(j, l);
            if (bjl == 0.0) continue;
            for (int i = 0; i < m; ++i) c(i, j) += a(i, l) * bjl;
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
    return t;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("add");
    Matrix c = a;
    for (size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

inline Matrix sub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("sub");
    Matrix c = a;
    for (size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

inline Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

/// a += s * b, in place.
inline void axpy(Matrix& a, double s, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("axpy");
    for (size_t i = 0; i < a.data().size(); ++i) a.data()[i] += s * b.data()[i];
}

inline Matrix concat_cols(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("concat_cols row counts");
    Matrix c(a.rows(), a.cols() + b.cols());
    c.set_columns(0, a);
    c.set_columns(a.cols(), b);
    return c;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

inline double max_abs(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s = std::max(s, std::abs(v));
    return s;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("max_abs_diff");
    double s = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i)
        s = std::max(s, std::abs(a.data()[i] - b.data()[i]));
    return s;
}

inline double trace(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("trace of non-square matrix");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace depict

#endif
