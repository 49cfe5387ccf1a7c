#pragma once

#include "daegeo/subspace.hpp"

#include <string>
#include <vector>

namespace daegeo {

/// Linear relation between F^{n1} and F^{n2}, stored as a subspace of the
/// product F^{n1+n2} with the first n1 coordinates belonging to the left
/// factor.
template <Field F>
struct Relation {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    Subspace<F> space;

    Relation() = default;
    Relation(std::size_t left, std::size_t right, Subspace<F> s) : n1(left), n2(right), space(std::move(s)) {
        if (space.ambient_dim() != n1 + n2)
            throw DimensionMismatch("relation space of ambient dimension " + std::to_string(space.ambient_dim()) +
                                    " does not split as " + std::to_string(n1) + " + " + std::to_string(n2));
    }

    static Relation span(std::size_t left, std::size_t right, const Matrix<F>& generators) {
        return Relation(left, right, Subspace<F>::span(generators));
    }

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// pi_1(R).
template <Field F>
Subspace<F> project_left(const Relation<F>& r) {
    return Subspace<F>::span(r.space.basis().row_range(0, r.n1));
}

/// pi_2(R).
template <Field F>
Subspace<F> project_right(const Relation<F>& r) {
    return Subspace<F>::span(r.space.basis().row_range(r.n1, r.n2));
}

/// {(b, a) : (a, b) in R}.
template <Field F>
Relation<F> inverse_relation(const Relation<F>& r) {
    const Matrix<F>& b = r.space.basis();
    return Relation<F>::span(r.n2, r.n1, vstack(b.row_range(r.n1, r.n2), b.row_range(0, r.n1)));
}

/// Graph {(x, H x) : x in domain}.
template <Field F>
Relation<F> graph_relation(const Matrix<F>& h, const Subspace<F>& domain) {
    if (domain.ambient_dim() != h.cols()) throw DimensionMismatch("graph_relation: domain does not match map");
    return Relation<F>::span(h.cols(), h.rows(), vstack(domain.basis(), h * domain.basis()));
}

/// Diagonal {(x, x) : x in v}.
template <Field F>
Relation<F> diagonal_relation(const Subspace<F>& v) {
    return graph_relation(Matrix<F>::identity(v.ambient_dim()), v);
}

}  // namespace daegeo
