#pragma once

#include "daegeo/matrix.hpp"

#include <cstddef>
#include <string>

namespace daegeo {

/// A linear subspace of F^n held in canonical form: the basis is the
/// transpose of the nonzero rows of rref(generators^T). Two Subspace values
/// compare equal exactly when they denote the same subspace.
template <Field F>
class Subspace {
public:
    Subspace() = default;

    /// Column space of `generators` (ambient dimension = generators.rows()).
    static Subspace span(const Matrix<F>& generators) {
        const auto r = rref(generators.transpose());
        return Subspace(generators.rows(), r.reduced.row_range(0, r.rank()).transpose());
    }

    static Subspace zero(std::size_t n) { return Subspace(n, Matrix<F>(n, 0)); }
    static Subspace full(std::size_t n) { return Subspace(n, Matrix<F>::identity(n)); }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    /// ambient_dim x dim, linearly independent columns.
    const Matrix<F>& basis() const { return basis_; }

    bool contains_vector(const Matrix<F>& v) const {
        if (v.rows() != ambient_) throw DimensionMismatch("vector " + v.shape() + " in F^" + std::to_string(ambient_));
        return rank(hstack(basis_, v)) == dim();
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    Subspace(std::size_t n, Matrix<F> basis) : ambient_(n), basis_(std::move(basis)) {}

    std::size_t ambient_ = 0;
    Matrix<F> basis_;
};

namespace detail {
template <Field F>
void require_same_ambient(const Subspace<F>& u, const Subspace<F>& v, const char* op) {
    if (u.ambient_dim() != v.ambient_dim())
        throw DimensionMismatch(std::string(op) + ": ambient dimensions " + std::to_string(u.ambient_dim()) +
                                " and " + std::to_string(v.ambient_dim()));
}
}  // namespace detail

template <Field F>
Subspace<F> sum(const Subspace<F>& u, const Subspace<F>& v) {
    detail::require_same_ambient(u, v, "sum");
    return Subspace<F>::span(hstack(u.basis(), v.basis()));
}

template <Field F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& v) {
    detail::require_same_ambient(u, v, "intersect");
    // (a, b) in ker [U | -V]  <=>  U a = V b lies in both.
    const Matrix<F> k = kernel(hstack(u.basis(), -v.basis()));
    return Subspace<F>::span(u.basis() * k.row_range(0, u.dim()));
}

/// M V.
template <Field F>
Subspace<F> image_of(const Matrix<F>& m, const Subspace<F>& v) {
    if (m.cols() != v.ambient_dim())
        throw DimensionMismatch("image_of: map " + m.shape() + " on F^" + std::to_string(v.ambient_dim()));
    return Subspace<F>::span(m * v.basis());
}

/// Column space of M.
template <Field F>
Subspace<F> range(const Matrix<F>& m) {
    return Subspace<F>::span(m);
}

/// Null space of M as a subspace of F^{M.cols}.
template <Field F>
Subspace<F> null_space(const Matrix<F>& m) {
    return Subspace<F>::span(kernel(m));
}

/// {x : M x in W}.
template <Field F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& w) {
    if (m.rows() != w.ambient_dim())
        throw DimensionMismatch("preimage: map " + m.shape() + " into F^" + std::to_string(w.ambient_dim()));
    const Matrix<F> k = kernel(hstack(m, -w.basis()));
    return Subspace<F>::span(k.row_range(0, m.cols()));
}

/// V subset of U.
template <Field F>
bool contains(const Subspace<F>& u, const Subspace<F>& v) {
    detail::require_same_ambient(u, v, "contains");
    if (v.dim() > u.dim()) return false;
    return rank(hstack(u.basis(), v.basis())) == u.dim();
}

/// U x V in F^{n1+n2}.
template <Field F>
Subspace<F> product_embed(const Subspace<F>& u, const Subspace<F>& v) {
    return Subspace<F>::span(block_diag(u.basis(), v.basis()));
}

}  // namespace daegeo
