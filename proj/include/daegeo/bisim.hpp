#pragma once

#include "daegeo/geometric.hpp"
#include "daegeo/relation.hpp"

#include <optional>
#include <string>

namespace daegeo {

/// Block data of the product of two systems sharing input and output spaces.
template <Field F>
struct ProductData {
    std::size_t n1 = 0, n2 = 0;
    Matrix<F> e_cross;      ///< diag(E1, E2)
    Matrix<F> a_cross;      ///< diag(A1, A2)
    Matrix<F> b_cross;      ///< [B1; B2]
    Matrix<F> c_cross;      ///< [C1, -C2]
    Matrix<F> g_bar_cross;  ///< diag(G1, G2)
    Subspace<F> g1_cross;   ///< (E1^{-1}(Im G1) cap V1*) x {0}
    Subspace<F> g2_cross;   ///< {0} x (E2^{-1}(Im G2) cap V2*)
    Subspace<F> v1_star;
    Subspace<F> v2_star;
};

/// Which defining conditions a candidate relation meets.
struct Conditions {
    bool disturbances_matched = false;  ///< (a) two-sided for bisimulation, one-sided for simulation
    bool dynamics_invariant = false;    ///< (b) A R in E R + Im G
    bool inputs_absorbed = false;       ///< (c) Im B in E R + Im G
    bool outputs_equal = false;         ///< (d) R in ker [C1, -C2]
    bool left_within_consistent = false;
    bool right_within_consistent = false;
    bool left_covers_consistent = false;   ///< pi_1(R) = V1*
    bool right_covers_consistent = false;  ///< pi_2(R) = V2*

    bool certifies() const { return disturbances_matched && dynamics_invariant && inputs_absorbed && outputs_equal; }
};

template <Field F>
struct Verdict {
    /// Present iff the relation meets (a)-(d) and projects into both
    /// consistent subspaces.
    std::optional<Relation<F>> relation;
    Conditions conditions;
    std::size_t iterations = 0;
    bool consistent_empty = false;

    bool holds() const { return relation.has_value(); }
};

struct FixpointOptions {
    /// Safety cap on refinement steps; defaults to n1 + n2 + 1.
    std::optional<std::size_t> max_iterations;
};

namespace detail {

template <Field F>
void require_common_interface(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    if (sys1.m() != sys2.m() || sys1.p() != sys2.p())
        throw InterfaceMismatch("systems '" + sys1.name() + "' (m=" + std::to_string(sys1.m()) +
                                ", p=" + std::to_string(sys1.p()) + ") and '" + sys2.name() +
                                "' (m=" + std::to_string(sys2.m()) + ", p=" + std::to_string(sys2.p()) +
                                ") do not share input and output spaces");
}

template <Field F>
void require_relation_shape(const Relation<F>& r, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    if (r.n1 != sys1.n() || r.n2 != sys2.n())
        throw DimensionMismatch("relation splits as " + std::to_string(r.n1) + " + " + std::to_string(r.n2) +
                                " but the systems have " + std::to_string(sys1.n()) + " and " +
                                std::to_string(sys2.n()) + " states");
}

// Product blocks that do not depend on the consistent subspaces.
template <Field F>
ProductData<F> product_blocks(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    ProductData<F> pd;
    pd.n1 = sys1.n();
    pd.n2 = sys2.n();
    pd.e_cross = block_diag(sys1.e(), sys2.e());
    pd.a_cross = block_diag(sys1.a(), sys2.a());
    pd.b_cross = vstack(sys1.b(), sys2.b());
    pd.c_cross = hstack(sys1.c(), -sys2.c());
    pd.g_bar_cross = block_diag(sys1.g(), sys2.g());
    return pd;
}

// E^{-1}(Im G) cap V*: consistent directions reachable by disturbance alone.
template <Field F>
Subspace<F> disturbance_directions(const DaeSystem<F>& sys, const Subspace<F>& v_star) {
    return intersect(preimage(sys.e(), range(sys.g())), v_star);
}

template <Field F>
void evaluate_dynamics(const Subspace<F>& r, const ProductData<F>& pd, Conditions& c) {
    const Subspace<F> reach = sum(image_of(pd.e_cross, r), range(pd.g_bar_cross));
    c.dynamics_invariant = contains(reach, image_of(pd.a_cross, r));
    c.inputs_absorbed = contains(reach, range(pd.b_cross));
    c.outputs_equal = contains(null_space(pd.c_cross), r);
}

template <Field F>
void evaluate_projections(const Relation<F>& r, const ProductData<F>& pd, Conditions& c) {
    const Subspace<F> left = project_left(r);
    const Subspace<F> right = project_right(r);
    c.left_within_consistent = contains(pd.v1_star, left);
    c.right_within_consistent = contains(pd.v2_star, right);
    c.left_covers_consistent = left == pd.v1_star;
    c.right_covers_consistent = right == pd.v2_star;
}

template <Field F>
bool one_sided_match(const Subspace<F>& r, const Subspace<F>& from, const Subspace<F>& to) {
    return contains(sum(r, to), from);
}

enum class Sidedness { both, left_by_right };

template <Field F>
Verdict<F> check_relation(const Relation<F>& r, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, Sidedness side);

template <Field F>
Verdict<F> maximal_relation(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, Sidedness side,
                            const FixpointOptions& options);

}  // namespace detail

/// Assembles the product data, or nullopt when either consistent set is
/// empty (no relation can then exist).
template <Field F>
std::optional<ProductData<F>> build_product(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    detail::require_common_interface(sys1, sys2);
    const auto c1 = consistent_subset(sys1);
    const auto c2 = consistent_subset(sys2);
    if (!c1.v_star || !c2.v_star) return std::nullopt;
    ProductData<F> pd = detail::product_blocks(sys1, sys2);
    pd.v1_star = *c1.v_star;
    pd.v2_star = *c2.v_star;
    pd.g1_cross = product_embed(detail::disturbance_directions(sys1, pd.v1_star), Subspace<F>::zero(sys2.n()));
    pd.g2_cross = product_embed(Subspace<F>::zero(sys1.n()), detail::disturbance_directions(sys2, pd.v2_star));
    return pd;
}

namespace detail {

template <Field F>
Verdict<F> check_relation(const Relation<F>& r, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, Sidedness side) {
    require_common_interface(sys1, sys2);
    require_relation_shape(r, sys1, sys2);
    Verdict<F> verdict;
    const auto pd = build_product(sys1, sys2);
    if (!pd) {
        verdict.consistent_empty = true;
        evaluate_dynamics(r.space, product_blocks(sys1, sys2), verdict.conditions);
        return verdict;
    }
    auto& c = verdict.conditions;
    c.disturbances_matched = one_sided_match(r.space, pd->g1_cross, pd->g2_cross) &&
                             (side == Sidedness::left_by_right || one_sided_match(r.space, pd->g2_cross, pd->g1_cross));
    evaluate_dynamics(r.space, *pd, c);
    evaluate_projections(r, *pd, c);
    if (c.certifies() && c.left_within_consistent && c.right_within_consistent) verdict.relation = r;
    return verdict;
}

template <Field F>
Verdict<F> maximal_relation(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, Sidedness side,
                            const FixpointOptions& options) {
    require_common_interface(sys1, sys2);
    Verdict<F> verdict;
    const auto pd = build_product(sys1, sys2);
    if (!pd) {
        verdict.consistent_empty = true;
        return verdict;
    }
    const std::size_t cap = options.max_iterations.value_or(sys1.n() + sys2.n() + 1);
    const Subspace<F> im_g = range(pd->g_bar_cross);

    // Only the invariance condition is iterated. The disturbance-matching
    // condition is upward closed (R in R' and it holds for R => it holds for
    // R'), so it holds for some iterate below the fixed point iff it holds
    // at the fixed point.
    Subspace<F> r = Subspace<F>::full(sys1.n() + sys2.n());
    std::size_t steps = 0;
    auto descend = [&](Subspace<F> next) {
        if (steps == cap)
            throw IterationLimit("relation refinement did not stabilise within " + std::to_string(cap) + " steps");
        r = std::move(next);
        ++steps;
    };
    if (Subspace<F> k = null_space(pd->c_cross); !(k == r)) descend(std::move(k));
    for (;;) {
        Subspace<F> next = intersect(r, preimage(pd->a_cross, sum(image_of(pd->e_cross, r), im_g)));
        if (next == r) break;
        descend(std::move(next));
    }
    verdict.iterations = steps;
    const Relation<F> candidate(sys1.n(), sys2.n(), r);
    auto& c = verdict.conditions;
    c.disturbances_matched = one_sided_match(r, pd->g1_cross, pd->g2_cross) &&
                             (side == Sidedness::left_by_right || one_sided_match(r, pd->g2_cross, pd->g1_cross));
    evaluate_dynamics(r, *pd, c);
    evaluate_projections(candidate, *pd, c);
    if (c.certifies() && c.left_within_consistent && c.right_within_consistent) verdict.relation = candidate;
    return verdict;
}

}  // namespace detail

/// Decides whether R is a bisimulation relation (conditions (a)-(d) plus
/// pi_i(R) in V_i*). All booleans are reported either way.
template <Field F>
Verdict<F> is_bisimulation(const Relation<F>& r, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    return detail::check_relation(r, sys1, sys2, detail::Sidedness::both);
}

/// Largest bisimulation relation, if any exists.
template <Field F>
Verdict<F> maximal_bisimulation(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2,
                                const FixpointOptions& options = {}) {
    return detail::maximal_relation(sys1, sys2, detail::Sidedness::both, options);
}

template <Field F>
struct Bisimilarity {
    bool bisimilar = false;
    Verdict<F> verdict;
};

/// Bisimilar iff the maximal relation exists and projects onto both
/// consistent subspaces.
template <Field F>
Bisimilarity<F> bisimilar(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, const FixpointOptions& options = {}) {
    Bisimilarity<F> out{false, maximal_bisimulation(sys1, sys2, options)};
    const auto& c = out.verdict.conditions;
    out.bisimilar = out.verdict.holds() && c.left_covers_consistent && c.right_covers_consistent;
    return out;
}

/// Direct check for ordinary systems (E1 = I, E2 = I), where every state is
/// consistent:
///   R + (Im G1 x 0) = R + (0 x Im G2),  A R in R + Im diag(G1, G2),
///   Im B in R + Im diag(G1, G2),         R in ker [C1, -C2].
/// Shares no code with the descriptor-system checker beyond subspace
/// arithmetic.
template <Field F>
Conditions check_ordinary_bisimulation(const Relation<F>& r, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    detail::require_common_interface(sys1, sys2);
    detail::require_relation_shape(r, sys1, sys2);
    if (sys1.e() != Matrix<F>::identity(sys1.n()) || sys2.e() != Matrix<F>::identity(sys2.n()))
        throw DimensionError("check_ordinary_bisimulation requires E1 = I and E2 = I");
    const std::size_t n1 = sys1.n(), n2 = sys2.n();
    const Subspace<F> g1 = Subspace<F>::span(vstack(sys1.g(), Matrix<F>(n2, sys1.s())));
    const Subspace<F> g2 = Subspace<F>::span(vstack(Matrix<F>(n1, sys2.s()), sys2.g()));
    const Subspace<F> ge = sum(g1, g2);
    const Subspace<F> r_ge = sum(r.space, ge);
    Conditions c;
    c.disturbances_matched = sum(r.space, g1) == sum(r.space, g2);
    c.dynamics_invariant = contains(r_ge, image_of(block_diag(sys1.a(), sys2.a()), r.space));
    c.inputs_absorbed = contains(r_ge, range(vstack(sys1.b(), sys2.b())));
    c.outputs_equal = (hstack(sys1.c(), -sys2.c()) * r.space.basis()).is_zero();
    c.left_within_consistent = c.right_within_consistent = true;
    c.left_covers_consistent = project_left(r).is_full();
    c.right_covers_consistent = project_right(r).is_full();
    return c;
}

}  // namespace daegeo
