#pragma once

#include "daegeo/dae_system.hpp"
#include "daegeo/subspace.hpp"
#include "daegeo/transforms.hpp"

#include <optional>
#include <vector>

namespace daegeo {

template <Field F>
struct ConsistentResult {
    /// Largest V with A V in E V + Im G.
    Subspace<F> v0_star;
    /// Equal to v0_star when Im B fits into E v0_star + Im G; nullopt means
    /// the consistent set is empty (not the zero subspace).
    std::optional<Subspace<F>> v_star;
    std::size_t iterations = 0;
};

/// Largest V with  A V in E V + Im G  and  Im B in E V + Im G.
///
/// Descending iteration V_0 = F^n, V_{k+1} = V_k cap A^{-1}(E V_k + Im G);
/// each step strictly lowers the dimension until the fixed point, so at
/// most n steps are taken.
template <Field F>
ConsistentResult<F> consistent_subset(const DaeSystem<F>& sys) {
    const Subspace<F> im_g = range(sys.g());
    Subspace<F> v = Subspace<F>::full(sys.n());
    std::size_t iterations = 0;
    for (;;) {
        Subspace<F> next = intersect(v, preimage(sys.a(), sum(image_of(sys.e(), v), im_g)));
        if (next == v) break;
        v = std::move(next);
        ++iterations;
    }
    ConsistentResult<F> out{v, std::nullopt, iterations};
    if (contains(sum(image_of(sys.e(), v), im_g), range(sys.b()))) out.v_star = v;
    return out;
}

/// Maximal output-nulling controlled invariant subspace of
///
///     x' = A_aa x + A_ab v,    w = A_ba x + A_bb v
///
/// together with a friend F: (A_aa + A_ab F) W in W and (A_ba + A_bb F) W = 0.
template <Field F>
struct InvariantPair {
    Subspace<F> w;
    Matrix<F> friend_map;  ///< n_b x n_a
    std::size_t iterations = 0;
};

/// General case with a feedthrough term A_bb.
///
/// W_0 = F^{n_a}; W_{k+1} = { x in W_k : exists v, A_aa x + A_ab v in W_k and
/// A_ba x + A_bb v = 0 }. With A_bb = 0 the first step yields ker A_ba and
/// every later step equals W_k cap A_aa^{-1}(W_k + Im A_ab) cap ker A_ba.
template <Field F>
InvariantPair<F> controlled_invariant_w(const Matrix<F>& a_aa, const Matrix<F>& a_ab, const Matrix<F>& a_ba,
                                        const Matrix<F>& a_bb) {
    const std::size_t na = a_aa.rows();
    const std::size_t nb = a_ab.cols();
    if (a_aa.cols() != na || a_ab.rows() != na || a_ba.cols() != na || a_bb.rows() != a_ba.rows() ||
        a_bb.cols() != nb)
        throw DimensionMismatch("controlled_invariant_w: inconsistent block shapes A_aa " + a_aa.shape() + ", A_ab " +
                                a_ab.shape() + ", A_ba " + a_ba.shape() + ", A_bb " + a_bb.shape());
    const std::size_t qb = a_ba.rows();

    // Unknowns (x, v, c): A_aa x + A_ab v - W c = 0 and A_ba x + A_bb v = 0.
    auto constraint = [&](const Subspace<F>& w) {
        const Matrix<F> top = hstack(hstack(a_aa, a_ab), -w.basis());
        const Matrix<F> bottom = hstack(hstack(a_ba, a_bb), Matrix<F>(qb, w.dim()));
        return vstack(top, bottom);
    };

    Subspace<F> w = Subspace<F>::full(na);
    std::size_t iterations = 0;
    for (;;) {
        const Matrix<F> k = kernel(constraint(w));
        Subspace<F> next = intersect(w, Subspace<F>::span(k.row_range(0, na)));
        if (next == w) break;
        w = std::move(next);
        ++iterations;
    }

    // Friend: one feasible v per basis vector of W (free variables zero),
    // extended by zero on the coordinate complement of W.
    const Matrix<F> lhs = constraint(w).col_range(na, nb + w.dim());
    Matrix<F> values(nb, w.dim());
    for (std::size_t i = 0; i < w.dim(); ++i) {
        const Matrix<F> wi = w.basis().col(i);
        const Matrix<F> rhs = -vstack(a_aa * wi, a_ba * wi);
        const auto sol = solve(lhs, rhs);
        if (!sol) throw std::logic_error("controlled_invariant_w: basis vector without admissible input");
        for (std::size_t r = 0; r < nb; ++r) values(r, i) = (*sol)(r, 0);
    }
    // basis^T is in reduced echelon form; its non-pivot coordinates complete
    // the basis.
    const auto echelon = rref(w.basis().transpose());
    std::vector<bool> used(na, false);
    for (auto c : echelon.pivot_cols) used[c] = true;
    Matrix<F> completed = w.basis();
    for (std::size_t c = 0; c < na; ++c)
        if (!used[c]) completed = hstack(completed, Matrix<F>::unit(na, c));
    const Matrix<F> padded = hstack(values, Matrix<F>(nb, na - w.dim()));
    return {w, padded * inverse(completed), iterations};
}

/// Zero-feedthrough auxiliary system x' = A_aa x + A_ab v, w = A_ba x.
template <Field F>
InvariantPair<F> controlled_invariant_w(const Matrix<F>& a_aa, const Matrix<F>& a_ab, const Matrix<F>& a_ba) {
    return controlled_invariant_w(a_aa, a_ab, a_ba, Matrix<F>(a_ba.rows(), a_ab.cols()));
}

/// Consistent subspace assembled from the special form:
///
///     { T (x_a, F x_a + z) : x_a in W, z in ker A_bb cap A_ab^{-1} W }
///
/// or nullopt (empty) unless B_b = 0 and Im B_a is inside W. The algebraic
/// rows carry the feedthrough A_bb into the invariant-subspace computation.
template <Field F>
std::optional<Subspace<F>> vstar_via_special_form(const SpecialForm<F>& sf) {
    if (!sf.b_b.is_zero()) return std::nullopt;
    const auto pair = controlled_invariant_w(sf.a_aa, sf.a_ab, sf.a_ba, sf.a_bb);
    if (!contains(pair.w, range(sf.b_a))) return std::nullopt;

    const Subspace<F> z = intersect(null_space(sf.a_bb), preimage(sf.a_ab, pair.w));
    const Matrix<F> upper = vstack(pair.w.basis(), pair.friend_map * pair.w.basis());
    const Matrix<F> lower = vstack(Matrix<F>(sf.n_a, z.dim()), z.basis());
    return Subspace<F>::span(sf.t_matrix * hstack(upper, lower));
}

/// Checks the two defining inclusions for a candidate consistent subspace.
template <Field F>
bool satisfies_consistency(const DaeSystem<F>& sys, const Subspace<F>& v) {
    const Subspace<F> reach = sum(image_of(sys.e(), v), range(sys.g()));
    return contains(reach, image_of(sys.a(), v)) && contains(reach, range(sys.b()));
}

}  // namespace daegeo
