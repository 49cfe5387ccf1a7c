#pragma once

#include "daegeo/errors.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace daegeo {

/// Exact field arithmetic. No rounding is allowed anywhere below this point.
template <typename F>
concept Field = std::regular<F> && requires(F a, F b) {
    F(0);
    F(1);
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

/// Dense row-major matrix over a field. Zero rows or zero columns are legal.
template <Field F>
class Matrix {
public:
    using value_type = F;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::initializer_list<std::initializer_list<F>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    static Matrix column(std::span<const F> entries) {
        Matrix m(entries.size(), 1);
        std::copy(entries.begin(), entries.end(), m.data_.begin());
        return m;
    }

    /// e_index in F^n.
    static Matrix unit(std::size_t n, std::size_t index) {
        Matrix m(n, 1);
        m(index, 0) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const F> data() const { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Contiguous sub-block.
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
    Matrix row_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
    Matrix col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

    Matrix select_cols(std::span<const std::size_t> indices) const {
        Matrix s(rows_, indices.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < indices.size(); ++k) s(i, k) = (*this)(i, indices[k]);
        return s;
    }

    Matrix select_rows(std::span<const std::size_t> indices) const {
        Matrix s(indices.size(), cols_);
        for (std::size_t k = 0; k < indices.size(); ++k)
            for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(indices[k], j);
        return s;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "+");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] + b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "-");
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] - b.data_[k];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("product of " + a.shape() + " and " + b.shape());
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }

    friend Matrix operator*(const F& s, const Matrix& m) {
        Matrix r = m;
        for (auto& x : r.data_) x = s * x;
        return r;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j).to_string();
        }
        return os << "] (" << m.shape() << ')';
    }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string("operator") + op + " on " + shape() + " and " + o.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <Field F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack of " + a.shape() + " and " + b.shape());
    Matrix<F> r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

template <Field F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack of " + a.shape() + " and " + b.shape());
    Matrix<F> r(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
    }
    return r;
}

template <Field F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> r(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

template <Field F>
struct Rref {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

template <Field F>
struct RrefWithTransform : Rref<F> {
    /// Invertible U with U * input == reduced.
    Matrix<F> transform;
};

namespace detail {

// Gauss-Jordan elimination; when `track` is non-null the same row operations
// are applied to it.
template <Field F>
std::vector<std::size_t> gauss_jordan(Matrix<F>& m, Matrix<F>* track) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
            if (track)
                for (std::size_t j = 0; j < track->cols(); ++j) std::swap((*track)(p, j), (*track)(row, j));
        }
        const F inv = F(1) / m(row, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        if (track)
            for (std::size_t j = 0; j < track->cols(); ++j) (*track)(row, j) = (*track)(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, c).is_zero()) continue;
            const F factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(row, j);
            if (track)
                for (std::size_t j = 0; j < track->cols(); ++j)
                    (*track)(i, j) = (*track)(i, j) - factor * (*track)(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace detail

/// Reduced row echelon form.
template <Field F>
Rref<F> rref(Matrix<F> m) {
    auto pivots = detail::gauss_jordan<F>(m, nullptr);
    return {std::move(m), std::move(pivots)};
}

/// Reduced row echelon form together with the invertible row transform.
template <Field F>
RrefWithTransform<F> rref_with_transform(Matrix<F> m) {
    Matrix<F> u = Matrix<F>::identity(m.rows());
    auto pivots = detail::gauss_jordan<F>(m, &u);
    RrefWithTransform<F> out;
    out.reduced = std::move(m);
    out.pivot_cols = std::move(pivots);
    out.transform = std::move(u);
    return out;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank();
}

/// Basis of {x : m x = 0}, one column per free variable.
template <Field F>
Matrix<F> kernel(const Matrix<F>& m) {
    const auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    Matrix<F> basis(m.cols(), m.cols() - r.rank());
    std::size_t k = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(free, k) = F(1);
        for (std::size_t i = 0; i < r.rank(); ++i) basis(r.pivot_cols[i], k) = -r.reduced(i, free);
        ++k;
    }
    return basis;
}

/// One solution X of m X = b with all free variables set to zero, or
/// nullopt when some column of b is outside the range of m.
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& m, const Matrix<F>& b) {
    if (b.rows() != m.rows()) throw DimensionMismatch("solve: rhs " + b.shape() + " for " + m.shape());
    const auto r = rref(hstack(m, b));
    if (!r.pivot_cols.empty() && r.pivot_cols.back() >= m.cols()) return std::nullopt;
    Matrix<F> x(m.cols(), b.cols());
    for (std::size_t i = 0; i < r.rank(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivot_cols[i], j) = r.reduced(i, m.cols() + j);
    return x;
}

template <Field F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (m.rows() != m.cols()) throw NotSquare("inverse of non-square " + m.shape());
    const auto r = rref_with_transform(m);
    if (r.rank() != m.rows()) throw NotInvertible("matrix " + m.shape() + " is singular");
    return r.transform;
}

template <Field F>
F determinant(Matrix<F> m) {
    if (m.rows() != m.cols()) throw NotSquare("determinant of non-square " + m.shape());
    F det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return F(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        const F inv = F(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const F factor = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - factor * m(c, j);
        }
    }
    return det;
}

/// H^T (H H^T)^{-1}; requires full row rank. Over a finite field the Gram
/// matrix can be singular even then, which is reported as NotInvertible.
template <Field F>
Matrix<F> right_pseudo_inverse(const Matrix<F>& h) {
    if (rank(h) != h.rows())
        throw NotFullRowRank("matrix " + h.shape() + " does not have full row rank");
    const Matrix<F> ht = h.transpose();
    return ht * inverse(h * ht);
}

/// Elementwise conversion between fields (or from a field to anything
/// constructible by `fn`).
template <Field To, Field From, typename Fn>
Matrix<To> map_entries(const Matrix<From>& m, Fn&& fn) {
    Matrix<To> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = fn(m(i, j));
    return r;
}

}  // namespace daegeo
