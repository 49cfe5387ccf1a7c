#pragma once

#include "daegeo/bisim.hpp"

namespace daegeo {

/// Decides whether S is a simulation of sys1 by sys2: the one-sided
/// disturbance inclusion G1x in S + G2x plus (b)-(d) and pi_i(S) in V_i*.
/// conditions.left_covers_consistent reports pi_1(S) = V1*.
template <Field F>
Verdict<F> is_simulation(const Relation<F>& s, const DaeSystem<F>& sys1, const DaeSystem<F>& sys2) {
    return detail::check_relation(s, sys1, sys2, detail::Sidedness::left_by_right);
}

/// Largest simulation relation of sys1 by sys2, if any.
template <Field F>
Verdict<F> maximal_simulation(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2,
                              const FixpointOptions& options = {}) {
    return detail::maximal_relation(sys1, sys2, detail::Sidedness::left_by_right, options);
}

template <Field F>
struct Simulation {
    bool simulated = false;  ///< sys1 is simulated by sys2
    Verdict<F> verdict;
};

template <Field F>
Simulation<F> simulated_by(const DaeSystem<F>& sys1, const DaeSystem<F>& sys2, const FixpointOptions& options = {}) {
    Simulation<F> out{false, maximal_simulation(sys1, sys2, options)};
    out.simulated = out.verdict.holds() && out.verdict.conditions.left_covers_consistent;
    return out;
}

/// S + T^{-1} for S between sys1, sys2 and T between sys2, sys1.
template <Field F>
Relation<F> join_to_bisimulation(const Relation<F>& s, const Relation<F>& t) {
    if (s.n1 != t.n2 || s.n2 != t.n1)
        throw DimensionMismatch("join_to_bisimulation: relations split as " + std::to_string(s.n1) + " + " +
                                std::to_string(s.n2) + " and " + std::to_string(t.n1) + " + " +
                                std::to_string(t.n2));
    return Relation<F>(s.n1, s.n2, sum(s.space, inverse_relation(t).space));
}

template <Field F>
struct Abstraction {
    Matrix<F> h;              ///< surjective X -> Z
    Matrix<F> h_plus;         ///< H^T (H H^T)^{-1}
    Matrix<F> kernel_basis;   ///< K, columns span ker H
    Matrix<F> c_bar;          ///< C = c_bar H
    DaeSystem<F> abstract_sys;
    Relation<F> canonical_sim;  ///< {(x, H x)}
};

/// Quotient of sys along ker H: E H+ z' = A H+ z + B u + [G | E K | A K] d,
/// y = C H+ z. The directions lost in ker H are absorbed as extra
/// disturbances.
///
/// The canonical simulation is the graph of H over V* of sys (over the
/// whole state space when V* is empty, where no relation can certify).
template <Field F>
Abstraction<F> abstract_system(const DaeSystem<F>& sys, const Matrix<F>& h) {
    if (h.cols() != sys.n())
        throw DimensionMismatch("abstraction map " + h.shape() + " does not act on " + std::to_string(sys.n()) +
                                " states");
    if (rank(h) < h.rows())
        throw NotSurjective("abstraction map " + h.shape() + " has rank " + std::to_string(rank(h)));
    Abstraction<F> out;
    out.h = h;
    out.kernel_basis = kernel(h);
    if (!(sys.c() * out.kernel_basis).is_zero())
        throw KernelNotContained("ker H is not contained in ker C; the output cannot be expressed on the quotient");
    out.h_plus = right_pseudo_inverse(h);
    out.c_bar = sys.c() * out.h_plus;
    const Matrix<F> g_bar = hstack(hstack(sys.g(), sys.e() * out.kernel_basis), sys.a() * out.kernel_basis);
    out.abstract_sys = DaeSystem<F>(sys.e() * out.h_plus, sys.a() * out.h_plus, sys.b(), g_bar, out.c_bar,
                                    sys.name().empty() ? std::string() : sys.name() + "/H");
    const auto consistent = consistent_subset(sys);
    const Subspace<F> domain = consistent.v_star ? *consistent.v_star : Subspace<F>::full(sys.n());
    out.canonical_sim = graph_relation(h, domain);
    return out;
}

}  // namespace daegeo
