#include "daegeo/regular.hpp"

#include "daegeo/geometric.hpp"

#include <algorithm>
#include <stdexcept>

namespace daegeo {

namespace {

RationalMatrix pencil_at(const RationalMatrix& e, const RationalMatrix& a, const Rational& s) {
    RationalMatrix m = e;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = s * e(i, j) - a(i, j);
    return m;
}

void require_square_pencil(const RationalSystem& sys) {
    if (sys.s() != 0) throw HasDisturbances("system '" + sys.name() + "' has disturbances; pencil tests need G = 0");
    if (sys.q() != sys.n())
        throw NotSquare("system '" + sys.name() + "' has a " + sys.e().shape() + " pencil; a square pencil is required");
}

void require_regular(const RationalSystem& sys) {
    const auto report = is_regular(sys);
    if (!report.regular) throw NotRegular("system '" + sys.name() + "' has a singular pencil (det(sE - A) = 0)");
}

}  // namespace

std::vector<Rational> pencil_determinant(const RationalMatrix& e, const RationalMatrix& a) {
    if (e.rows() != e.cols() || a.rows() != e.rows() || a.cols() != e.cols())
        throw NotSquare("pencil determinant needs square E, A of equal size, got " + e.shape() + " and " + a.shape());
    const std::size_t n = e.rows();

    // Newton divided differences on the nodes 0..n.
    std::vector<Rational> coef(n + 1);
    for (std::size_t k = 0; k <= n; ++k) coef[k] = determinant(pencil_at(e, a, Rational(static_cast<long>(k))));
    for (std::size_t level = 1; level <= n; ++level)
        for (std::size_t k = n; k >= level; --k)
            coef[k] = (coef[k] - coef[k - 1]) / Rational(static_cast<long>(level));

    // Horner expansion of sum_j coef[j] prod_{i<j} (s - i).
    std::vector<Rational> poly{coef[n]};
    for (std::size_t j = n; j-- > 0;) {
        std::vector<Rational> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= Rational(static_cast<long>(j)) * poly[i];
        }
        next[0] += coef[j];
        poly = std::move(next);
    }
    while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
    return poly;
}

PencilReport is_regular(const RationalSystem& sys) {
    require_square_pencil(sys);
    PencilReport report;
    report.is_square = true;
    report.det_coefficients = pencil_determinant(sys.e(), sys.a());
    report.det_poly_nonzero = !report.det_coefficients.empty();
    const auto consistent = consistent_subset(sys);
    report.geometric_regular = intersect(consistent.v0_star, null_space(sys.e())).is_zero();
    if (report.det_poly_nonzero != report.geometric_regular)
        throw std::logic_error("regularity tests disagree for system '" + sys.name() + "'");
    report.regular = report.det_poly_nonzero;
    return report;
}

std::optional<RationalMatrix> transfer_at(const RationalSystem& sys, const Rational& s) {
    const RationalMatrix m = pencil_at(sys.e(), sys.a(), s);
    if (m.rows() != m.cols() || rank(m) < m.rows()) return std::nullopt;
    return sys.c() * (inverse(m) * sys.b());
}

TransferComparison transfer_equal(const RationalSystem& sys1, const RationalSystem& sys2, std::size_t min_samples) {
    detail::require_common_interface(sys1, sys2);
    require_regular(sys1);
    require_regular(sys2);
    const std::size_t wanted = std::max(min_samples, 2 * (sys1.n() + sys2.n()) + 1);

    TransferComparison out;
    out.equal = true;
    for (long s = 1; out.sample_points.size() < wanted; ++s) {
        const Rational point(s);
        const auto g1 = transfer_at(sys1, point);
        const auto g2 = transfer_at(sys2, point);
        if (!g1 || !g2) continue;
        out.sample_points.push_back(point);
        if (out.witness) continue;
        for (std::size_t i = 0; i < g1->rows() && !out.witness; ++i)
            for (std::size_t j = 0; j < g1->cols() && !out.witness; ++j)
                if ((*g1)(i, j) != (*g2)(i, j)) out.witness = TransferWitness{point, i, j, (*g1)(i, j), (*g2)(i, j)};
    }
    out.equal = !out.witness;
    return out;
}

RationalMatrix transfer_krylov_stack(const RationalSystem& sys1, const RationalSystem& sys2, std::size_t blocks) {
    detail::require_common_interface(sys1, sys2);
    const RationalMatrix e1_inv = inverse(sys1.e());
    const RationalMatrix e2_inv = inverse(sys2.e());
    const RationalMatrix m1 = e1_inv * sys1.a();
    const RationalMatrix m2 = e2_inv * sys2.a();
    RationalMatrix top = e1_inv * sys1.b();
    RationalMatrix bottom = e2_inv * sys2.b();
    RationalMatrix stack(sys1.n() + sys2.n(), 0);
    for (std::size_t k = 0; k < blocks; ++k) {
        stack = hstack(stack, vstack(top, bottom));
        top = m1 * top;
        bottom = m2 * bottom;
    }
    return stack;
}

RationalRelation relation_from_transfer(const RationalSystem& sys1, const RationalSystem& sys2) {
    detail::require_common_interface(sys1, sys2);
    for (const auto* sys : {&sys1, &sys2})
        if (sys->e().rows() != sys->e().cols() || rank(sys->e()) < sys->e().rows())
            throw NotInvertible("system '" + sys->name() + "': E " + sys->e().shape() + " is not invertible");
    const auto cmp = transfer_equal(sys1, sys2);
    if (!cmp.equal) throw TransferMismatch("transfer matrices differ at s = " + cmp.witness->s.to_string());
    return RationalRelation::span(sys1.n(), sys2.n(), transfer_krylov_stack(sys1, sys2, sys1.n() + sys2.n()));
}

RegularCertificate check_regular_certificate(const RationalRelation& r, const RationalSystem& sys1,
                                             const RationalSystem& sys2) {
    detail::require_common_interface(sys1, sys2);
    detail::require_relation_shape(r, sys1, sys2);
    const RationalMatrix basis = r.space.basis();
    const RationalMatrix e_r = vstack(sys1.e() * basis.row_range(0, r.n1), sys2.e() * basis.row_range(r.n1, r.n2));
    const RationalMatrix a_r = vstack(sys1.a() * basis.row_range(0, r.n1), sys2.a() * basis.row_range(r.n1, r.n2));
    const RationalMatrix b = vstack(sys1.b(), sys2.b());
    const std::size_t base = rank(e_r);
    RegularCertificate out;
    out.dynamics_invariant = rank(hstack(e_r, a_r)) == base;
    out.inputs_absorbed = rank(hstack(e_r, b)) == base;
    out.outputs_equal = (sys1.c() * basis.row_range(0, r.n1) - sys2.c() * basis.row_range(r.n1, r.n2)).is_zero();
    return out;
}

}  // namespace daegeo
