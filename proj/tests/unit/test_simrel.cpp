#include <catch2/catch_amalgamated.hpp>

#include "../support/common.hpp"
#include "../support/generators.hpp"
#include "../support/predicates.hpp"

#include "daegeo/simrel.hpp"

using namespace daegeo;
using GF2 = PrimeField<2>;

namespace {

// x' = u + d, y = x
Sys noisy_integrator() { return make_sys({{1}}, {{0}}, {{1}}, {{1}}, {{1}}, "noisy"); }

Sys with_io(gen::Rng& rng, const Sys& s, std::size_t m) {
    return Sys(s.e(), s.a(), gen::matrix<Rational>(rng, s.q(), m), s.g(), gen::matrix<Rational>(rng, 1, s.n()));
}

}  // namespace

TEST_CASE("a disturbance-free system is simulated by its noisy copy") {
    const auto forward = simulated_by(integrator(), noisy_integrator());
    CHECK(forward.simulated);
    REQUIRE(forward.verdict.relation);
    CHECK(forward.verdict.relation->space == S::span(col({1, 1})));

    const auto backward = simulated_by(noisy_integrator(), integrator());
    CHECK_FALSE(backward.simulated);
    CHECK_FALSE(backward.verdict.conditions.disturbances_matched);
    CHECK_FALSE(bisimilar(integrator(), noisy_integrator()).bisimilar);
}

TEST_CASE("simulation examples with empty consistent sets") {
    const auto s = simulated_by(empty_left(), empty_right());
    CHECK_FALSE(s.simulated);
    CHECK(s.verdict.consistent_empty);
}

TEST_CASE("abstraction of the double integrator") {
    const auto ab = abstract_system(double_integrator(), M{{1, 0}});
    CHECK(ab.kernel_basis == col({0, 1}));
    CHECK(ab.h_plus == col({1, 0}));
    CHECK(ab.c_bar == M{{1}});
    const Sys& z = ab.abstract_sys;
    CHECK(z.e() == col({1, 0}));
    CHECK(z.a() == col({0, 0}));
    CHECK(z.b() == col({0, 1}));
    CHECK(z.g() == M{{0, 1}, {1, 0}});
    CHECK(z.c() == M{{1}});
    CHECK(z.name() == "double_integrator/H");
    CHECK(ab.canonical_sim.space == S::span(M{{1, 0}, {0, 1}, {1, 0}}));
    CHECK(is_simulation(ab.canonical_sim, double_integrator(), z).holds());
    CHECK(simulated_by(double_integrator(), z).simulated);
}

TEST_CASE("abstraction input errors") {
    CHECK_THROWS_AS(abstract_system(double_integrator(), M{{1, 1}}), KernelNotContained);
    CHECK_THROWS_AS(abstract_system(double_integrator(), M{{1, 0}, {2, 0}}), NotSurjective);
    CHECK_THROWS_AS(abstract_system(double_integrator(), M{{1, 0, 0}}), DimensionMismatch);
    CHECK_THROWS_AS(join_to_bisimulation(Rel(1, 2, S::full(3)), Rel(1, 2, S::full(3))), DimensionMismatch);
}

TEST_CASE("canonical simulations of random abstractions hold") {
    gen::Rng rng(61);
    int tested = 0;
    for (int t = 0; t < 300 && tested < 60; ++t) {
        const Sys base = gen::square_system<Rational>(rng, 4, 1);
        if (!consistent_subset(base).v_star || base.n() < 2) continue;
        const std::size_t k = gen::uniform(rng, 1, int(base.n()) - 1);
        const M h = gen::matrix<Rational>(rng, k, base.n());
        if (rank(h) < k) continue;
        // outputs that factor through H
        const Sys s(base.e(), base.a(), base.b(), base.g(), gen::matrix<Rational>(rng, 1, k) * h);
        const auto ab = abstract_system(s, h);
        CHECK(ab.h * ab.h_plus == M::identity(k));
        CHECK(ab.c_bar * ab.h == s.c());
        CHECK(is_simulation(ab.canonical_sim, s, ab.abstract_sys).holds());
        CHECK(simulated_by(s, ab.abstract_sys).simulated);
        ++tested;
    }
    CHECK(tested >= 30);
}

TEST_CASE("simulations in both directions join into a bisimulation") {
    gen::Rng rng(62);
    int joined = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t m = gen::uniform(rng, 0, 1);
        const Sys s1 = with_io(rng, gen::square_system<Rational>(rng, 3, 1), m);
        const Sys s2 = with_io(rng, gen::square_system<Rational>(rng, 3, 1), m);
        const auto st = maximal_simulation(s1, s2), ts = maximal_simulation(s2, s1);
        if (!st.holds() || !ts.holds()) continue;
        ++joined;
        const Rel r = join_to_bisimulation(*st.relation, *ts.relation);
        CHECK(is_bisimulation(r, s1, s2).holds());
    }
    CHECK(joined > 10);
}

TEST_CASE("maximal bisimulations are simulations in both directions") {
    gen::Rng rng(63);
    for (int t = 0; t < 150; ++t) {
        const std::size_t m = gen::uniform(rng, 0, 1);
        const Sys s1 = with_io(rng, gen::square_system<Rational>(rng, 3, 2), m);
        const Sys s2 = with_io(rng, gen::square_system<Rational>(rng, 3, 2), m);
        const auto sim = maximal_simulation(s1, s2);
        const auto bis = maximal_bisimulation(s1, s2);
        if (sim.holds()) CHECK(is_simulation(*sim.relation, s1, s2).holds());
        if (!bis.holds()) continue;
        REQUIRE(sim.holds());
        CHECK(contains(sim.relation->space, bis.relation->space));
        CHECK(is_simulation(*bis.relation, s1, s2).holds());
        CHECK(is_simulation(inverse_relation(*bis.relation), s2, s1).holds());
        if (bisimilar(s1, s2).bisimilar) {
            CHECK(simulated_by(s1, s2).simulated);
            CHECK(simulated_by(s2, s1).simulated);
        }
    }
}

TEST_CASE("maximal simulations match exhaustive search over GF(2)") {
    gen::Rng rng(64);
    std::map<std::size_t, oracle::EnumeratedLattice> lattices;
    auto lattice = [&](std::size_t n) -> const oracle::EnumeratedLattice& {
        auto it = lattices.find(n);
        if (it == lattices.end()) it = lattices.emplace(n, oracle::EnumeratedLattice::build(2, n)).first;
        return it->second;
    };
    int holds = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t n1 = gen::uniform(rng, 1, 3), n2 = gen::uniform(rng, 1, 5 - int(n1));
        const std::size_t m = gen::uniform(rng, 0, 1);
        auto make = [&](std::size_t n) {
            gen::Shape sh{n, n, m, std::size_t(gen::uniform(rng, 0, 1)), 1};
            return gen::system<GF2>(rng, sh, gen::coin(rng, 0.5));
        };
        const auto s1 = make(n1), s2 = make(n2);
        const oracle::SystemMaps<2> m1(s1), m2(s2);
        const oracle::ProductOracle<2> po(m1, m2, lattice(n1), lattice(n2));
        const auto verdict = maximal_simulation(s1, s2);
        if (po.consistent_empty) {
            CHECK(verdict.consistent_empty);
            continue;
        }
        const auto best =
            oracle::oracle_max_subspace([&](const oracle::VectorSet& r) { return po.invariance(r); }, lattice(n1 + n2));
        REQUIRE(best);
        const bool absorbed =
            oracle::subset(oracle::range(po.b), oracle::sum(oracle::image(po.e, *best), oracle::range(po.g)));
        CHECK(verdict.holds() == (po.one_sided(*best) && absorbed));
        if (verdict.holds()) {
            ++holds;
            CHECK(oracle::from_subspace(verdict.relation->space) == *best);
        }
    }
    CHECK(holds > 0);
}
