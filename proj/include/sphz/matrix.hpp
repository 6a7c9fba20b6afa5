#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphz/rational.hpp"

namespace sphz {

// Dense matrix over an exact field (Rat or GaussRat).
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        data_.reserve(size_t(rows_) * cols_);
        for (auto& row : init) {
            if (int(row.size()) != cols_) throw std::invalid_argument("ragged initializer");
            for (auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const T& b = o(k, j);
                    if (!is_zero(b)) r(i, j) += a * b;
                }
            }
        return r;
    }
    Matrix operator*(const T& c) const {
        Matrix r(rows_, cols_);
        for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * c;
        return r;
    }
    Matrix operator-() const { return *this * T(-1); }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero_matrix() const {
        for (auto& x : data_)
            if (!is_zero(x)) return false;
        return true;
    }

    T trace() const {
        T t(0);
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    void set_row(int i, const std::vector<T>& v) {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    // Flattens row-major; the coordinate vector of a matrix seen as an element
    // of the ambient vector space.
    std::vector<T> flatten() const { return data_; }

    static Matrix from_flat(int rows, int cols, const std::vector<T>& flat) {
        Matrix m(rows, cols);
        m.data_ = flat;
        return m;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    }

    int rows_, cols_;
    std::vector<T> data_;
};

using QMat = Matrix<Rat>;
using QVec = std::vector<Rat>;

inline QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline QVec operator*(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}
inline bool is_zero_vec(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_zero(x); });
}
inline Rat dot(const QVec& a, const QVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// In-place reduced row echelon form; returns pivot column indices.
template <class T>
std::vector<int> rref(Matrix<T>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!is_zero(m(i, c))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Matrix<T> m) {
    return int(rref(m).size());
}

// Basis of the right kernel {x : m x = 0}, one vector per row.
template <class T>
Matrix<T> kernel_basis(Matrix<T> m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = m.cols() - int(pivots.size());
    Matrix<T> out(nfree, m.cols());
    int k = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        out(k, c) = T(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi) out(k, pivots[pi]) = -m(int(pi), c);
        ++k;
    }
    return out;
}

// Solves A x = b; returns one solution if consistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[size_t(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<T> x(a.cols(), T(0));
    for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug(int(pi), a.cols());
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    int n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    if (int(rref(aug).size()) != n) return std::nullopt;
    Matrix<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline Rat det(QMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    int n = m.rows();
    Rat d(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(m(i, c))) { p = i; break; }
        if (p < 0) return Rat(0);
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        Rat inv = Rat(1) / m(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            Rat f = m(i, c) * inv;
            for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

// Characteristic polynomial det(tI - A), coefficients low to high degree,
// by the Faddeev-LeVerrier recursion.
inline QVec char_poly(const QMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_poly of non-square matrix");
    int n = a.rows();
    QVec c(size_t(n) + 1, Rat(0));
    c[size_t(n)] = Rat(1);
    QMat m = QMat::identity(n);
    for (int k = 1; k <= n; ++k) {
        m = a * m;
        Rat ck = -m.trace() / k;
        c[size_t(n - k)] = ck;
        for (int i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

// Stacks the rows of several matrices, each flattened, into one matrix.
inline QMat stack_flat(const std::vector<QMat>& mats) {
    if (mats.empty()) return QMat(0, 0);
    int dim = mats[0].rows() * mats[0].cols();
    QMat out(int(mats.size()), dim);
    for (size_t i = 0; i < mats.size(); ++i) out.set_row(int(i), mats[i].flatten());
    return out;
}

inline QMat stack_rows(const std::vector<QVec>& rows, int cols) {
    QMat out(int(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) out.set_row(int(i), rows[i]);
    return out;
}

// Signature (n_plus, n_minus, n_zero) of a rational symmetric matrix by
// congruence diagonalization.
inline std::tuple<int, int, int> signature(QMat s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("signature of non-square matrix");
    int n = s.rows();
    int pos = 0, neg = 0, zero = 0;
    for (int k = 0; k < n; ++k) {
        if (is_zero(s(k, k))) {
            int j = -1;
            for (int i = k + 1; i < n; ++i)
                if (!is_zero(s(k, i))) { j = i; break; }
            if (j < 0) { ++zero; continue; }  // entire row already clear
            // congruence: mix row/col j into k to create a nonzero diagonal
            for (int c = 0; c < n; ++c) s(k, c) += s(j, c);
            for (int r = 0; r < n; ++r) s(r, k) += s(r, j);
            if (is_zero(s(k, k))) {
                // s(j,j) == -2 s(k,j); the difference works instead
                for (int c = 0; c < n; ++c) s(k, c) -= 2 * s(j, c);
                for (int r = 0; r < n; ++r) s(r, k) -= 2 * s(r, j);
            }
        }
        if (is_zero(s(k, k))) { ++zero; continue; }
        (sign(s(k, k)) > 0 ? pos : neg)++;
        Rat inv = Rat(1) / s(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (is_zero(s(i, k))) continue;
            Rat f = s(i, k) * inv;
            for (int c = 0; c < n; ++c) s(i, c) -= f * s(k, c);
            for (int r = 0; r < n; ++r) s(r, i) -= f * s(r, k);
        }
    }
    return {pos, neg, zero};
}

}  // namespace sphz
