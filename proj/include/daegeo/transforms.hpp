#pragma once

#include "daegeo/dae_system.hpp"
#include "daegeo/subspace.hpp"

#include <vector>

namespace daegeo {

/// Result of premultiplying the dynamics by P = [G_perp; G_dagger].
template <Field F>
struct DisturbanceElimination {
    DaeSystem<F> reduced;  ///< G_perp E x' = G_perp A x + G_perp B u, no disturbance
    Matrix<F> g_perp;      ///< left annihilator of G with q - rank(G) rows
    Matrix<F> g_dagger;    ///< rank(G) rows; a left inverse of G when G has full column rank
    Matrix<F> p_matrix;    ///< [g_perp; g_dagger], invertible q x q
};

/// Splits the equations into the disturbance-free part and the part that
/// merely determines d.
///
/// G_perp is the transposed kernel basis of G^T. G_dagger is read off the
/// row transform that brings G to reduced echelon form: its first rank(G)
/// rows map the pivot columns of G to unit vectors. When G has dependent
/// columns no left inverse exists, and G_dagger G is then the reduced echelon
/// form of G restricted to its nonzero rows.
template <Field F>
DisturbanceElimination<F> eliminate_disturbance(const DaeSystem<F>& sys) {
    const auto& g = sys.g();
    const Matrix<F> g_perp = kernel(g.transpose()).transpose();
    const auto r = rref_with_transform(g);
    const Matrix<F> g_dagger = r.transform.row_range(0, r.rank());

    DisturbanceElimination<F> out;
    out.reduced = DaeSystem<F>::without_disturbance(g_perp * sys.e(), g_perp * sys.a(), g_perp * sys.b(), sys.c(),
                                                    sys.name());
    out.g_perp = g_perp;
    out.g_dagger = g_dagger;
    out.p_matrix = vstack(g_perp, g_dagger);
    return out;
}

/// Coordinates in which S E T = [I 0; 0 0]. With T^{-1} x = (x_a, x_b) and
/// premultiplication by S the dynamics split into
///
///     x_a' = A_aa x_a + A_ab x_b + B_a u
///        0 = A_ba x_a + A_bb x_b + B_b u
///        y = C_a x_a + C_b x_b
template <Field F>
struct SpecialForm {
    Matrix<F> s_matrix;  ///< q x q, invertible
    Matrix<F> t_matrix;  ///< n x n, invertible
    std::size_t n_a = 0;  ///< rank E
    std::size_t n_b = 0;  ///< n - rank E
    Matrix<F> a_aa, a_ab, a_ba, a_bb;
    Matrix<F> b_a, b_b;
    Matrix<F> c_a, c_b;
};

template <Field F>
SpecialForm<F> to_special_form(const DaeSystem<F>& sys) {
    if (sys.s() != 0)
        throw HasDisturbances("special form requires a disturbance-free system; eliminate disturbances first");
    const std::size_t q = sys.q();
    const std::size_t n = sys.n();

    // S from the row reduction of E; then S E = [I X; 0 0] after permuting
    // pivot columns to the front, and a column shear clears X.
    const auto r = rref_with_transform(sys.e());
    const std::size_t na = r.rank();
    std::vector<std::size_t> order = r.pivot_cols;
    {
        std::vector<bool> is_pivot(n, false);
        for (auto c : r.pivot_cols) is_pivot[c] = true;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) order.push_back(c);
    }
    Matrix<F> perm(n, n);
    for (std::size_t k = 0; k < n; ++k) perm(order[k], k) = F(1);

    const Matrix<F> permuted = r.reduced * perm;
    Matrix<F> shear = Matrix<F>::identity(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = na; j < n; ++j) shear(i, j) = -permuted(i, j);

    SpecialForm<F> sf;
    sf.s_matrix = r.transform;
    sf.t_matrix = perm * shear;
    sf.n_a = na;
    sf.n_b = n - na;

    const Matrix<F> sat = sf.s_matrix * sys.a() * sf.t_matrix;
    const Matrix<F> sb = sf.s_matrix * sys.b();
    const Matrix<F> ct = sys.c() * sf.t_matrix;
    const std::size_t qb = q - na;
    sf.a_aa = sat.block(0, 0, na, na);
    sf.a_ab = sat.block(0, na, na, sf.n_b);
    sf.a_ba = sat.block(na, 0, qb, na);
    sf.a_bb = sat.block(na, na, qb, sf.n_b);
    sf.b_a = sb.row_range(0, na);
    sf.b_b = sb.row_range(na, qb);
    sf.c_a = ct.col_range(0, na);
    sf.c_b = ct.col_range(na, sf.n_b);
    return sf;
}

/// Moves the input into the state: [E 0] (x, u)' = [A B] (x, u) + G d,
/// y = [C 0] (x, u).
template <Field F>
DaeSystem<F> extend_input(const DaeSystem<F>& sys) {
    if (sys.m() == 0) return sys;
    const Matrix<F> e = hstack(sys.e(), Matrix<F>(sys.q(), sys.m()));
    const Matrix<F> a = hstack(sys.a(), sys.b());
    const Matrix<F> c = hstack(sys.c(), Matrix<F>(sys.p(), sys.m()));
    return DaeSystem<F>(e, a, Matrix<F>(sys.q(), 0), sys.g(), c, sys.name());
}

}  // namespace daegeo
