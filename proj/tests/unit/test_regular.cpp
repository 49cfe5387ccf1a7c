#include <catch2/catch_amalgamated.hpp>

#include "../support/common.hpp"
#include "../support/generators.hpp"

#include "daegeo/regular.hpp"

using namespace daegeo;

namespace {

// 0 = -x + u, y = x: a static gain of one.
Sys unit_gain() { return Sys::without_disturbance({{0}}, {{-1}}, {{1}}, {{1}}, "gain"); }

Sys random_regular(gen::Rng& rng, std::size_t n, std::size_t m, std::size_t p, bool invertible_e) {
    for (;;) {
        const M e = invertible_e ? gen::invertible<Rational>(rng, n) : gen::matrix<Rational>(rng, n, n, 0.5);
        const Sys s = Sys::without_disturbance(e, gen::matrix<Rational>(rng, n, n), gen::matrix<Rational>(rng, n, m),
                                               gen::matrix<Rational>(rng, p, n));
        if (is_regular(s).regular) return s;
    }
}

// Same transfer matrix: (S E T, S A T, S B, C T).
Sys equivalent(gen::Rng& rng, const Sys& s) {
    const M l = gen::invertible<Rational>(rng, s.q()), r = gen::invertible<Rational>(rng, s.n());
    return Sys::without_disturbance(l * s.e() * r, l * s.a() * r, l * s.b(), s.c() * r);
}

}  // namespace

TEST_CASE("pencil determinant examples") {
    using V = std::vector<Rational>;
    CHECK(pencil_determinant(M::identity(2), M{{1, 2}, {3, 4}}) == V{-2, -5, 1});
    CHECK(pencil_determinant(empty_left().e(), empty_left().a()) == V{1, -1});
    CHECK(pencil_determinant(empty_right().e(), empty_right().a()) == V{1, -1});
    CHECK(pencil_determinant(M{{1, 0}, {0, 0}}, M{{1, 0}, {0, 0}}).empty());
    CHECK(pencil_determinant(M(0, 0), M(0, 0)) == V{1});
    CHECK(pencil_determinant(M{{0}}, M{{3}}) == V{-3});
    CHECK_THROWS_AS(pencil_determinant(M::identity(2), M::identity(3)), NotSquare);
}

TEST_CASE("regularity examples") {
    const auto r = is_regular(empty_left());
    CHECK(r.regular);
    CHECK(r.geometric_regular);
    CHECK(r.det_poly_nonzero);

    const auto singular = is_regular(Sys::without_disturbance({{1, 0}, {0, 0}}, {{1, 0}, {0, 0}}, M(2, 1), M(1, 2)));
    CHECK_FALSE(singular.regular);
    CHECK_FALSE(singular.geometric_regular);
    CHECK(singular.det_coefficients.empty());

    CHECK_THROWS_AS(is_regular(disturbed_integrator()), HasDisturbances);
    CHECK_THROWS_AS(is_regular(Sys::without_disturbance({{1, 0}}, {{0, 1}}, M(1, 0), M(0, 2))), NotSquare);
}

TEST_CASE("algebraic and geometric regularity agree") {
    gen::Rng rng(71);
    int singular = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        const M e = gen::low_rank<Rational>(rng, n, n, gen::uniform(rng, 0, int(n)));
        const M a = gen::coin(rng, 0.3) ? gen::low_rank<Rational>(rng, n, n, gen::uniform(rng, 0, int(n)))
                                        : gen::matrix<Rational>(rng, n, n);
        const auto r = is_regular(Sys::without_disturbance(e, a, M(n, 0), M(0, n)));
        CHECK(r.regular == r.geometric_regular);
        CHECK(r.regular == r.det_poly_nonzero);
        CHECK(r.det_coefficients.size() <= n + 1);
        singular += !r.regular;
    }
    CHECK(singular > 5);
}

TEST_CASE("transfer examples") {
    CHECK(*transfer_at(integrator(), Rational(2)) == M{{Rational(1, 2)}});
    CHECK_FALSE(transfer_at(integrator(), Rational(0)).has_value());
    CHECK(*transfer_at(unit_gain(), Rational(2)) == M{{1}});
    CHECK(*transfer_at(empty_left(), Rational(5)) == M{{-1}});

    const auto cmp = transfer_equal(integrator(), unit_gain());
    CHECK_FALSE(cmp.equal);
    REQUIRE(cmp.witness);
    CHECK(cmp.witness->s == Rational(2));
    CHECK(cmp.witness->left == Rational(1, 2));
    CHECK(cmp.witness->right == Rational(1));

    const auto same = transfer_equal(empty_left(), empty_right());
    CHECK(same.equal);
    CHECK(same.sample_points.size() == 9);
    CHECK(transfer_equal(empty_left(), empty_right(), 20).sample_points.size() == 20);
    CHECK_THROWS_AS(transfer_equal(integrator(), disturbed_integrator()), HasDisturbances);
    CHECK_THROWS_AS(
        transfer_equal(integrator(), Sys::without_disturbance({{1, 0}, {0, 0}}, {{1, 0}, {0, 0}}, M(2, 1), M(1, 2))),
        NotRegular);
}

TEST_CASE("equivalent pencils have equal transfer matrices") {
    gen::Rng rng(72);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = gen::uniform(rng, 1, 2), p = gen::uniform(rng, 1, 2);
        const Sys s1 = random_regular(rng, gen::uniform(rng, 1, 3), m, p, gen::coin(rng, 0.5));
        const Sys s2 = equivalent(rng, s1);
        const auto cmp = transfer_equal(s1, s2);
        CHECK(cmp.equal);
        CHECK(cmp.sample_points.size() >= 2 * (s1.n() + s2.n()) + 1);

        const Sys other = random_regular(rng, gen::uniform(rng, 1, 3), m, p, true);
        const auto diff = transfer_equal(s1, other);
        if (!diff.equal) {
            REQUIRE(diff.witness);
            const auto& w = *diff.witness;
            CHECK(w.left != w.right);
            CHECK((*transfer_at(s1, w.s))(w.row, w.col) == w.left);
            CHECK((*transfer_at(other, w.s))(w.row, w.col) == w.right);
        }
    }
}

TEST_CASE("relations built from equal transfer matrices certify") {
    gen::Rng rng(73);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = gen::uniform(rng, 1, 2), p = gen::uniform(rng, 1, 2);
        const Sys s1 = random_regular(rng, gen::uniform(rng, 1, 3), m, p, true);
        const Sys s2 = equivalent(rng, s1);
        const Rel r = relation_from_transfer(s1, s2);
        CHECK(check_regular_certificate(r, s1, s2).holds());
        CHECK(is_bisimulation(r, s1, s2).holds());
    }
    CHECK_THROWS_AS(relation_from_transfer(empty_left(), empty_right()), NotInvertible);
    const Sys fast = Sys::without_disturbance({{1}}, {{0}}, {{2}}, {{1}});
    CHECK_THROWS_AS(relation_from_transfer(integrator(), fast), TransferMismatch);
}

TEST_CASE("krylov stack stops growing after n1 + n2 blocks") {
    gen::Rng rng(74);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = gen::uniform(rng, 1, 2);
        const Sys s1 = random_regular(rng, gen::uniform(rng, 1, 3), m, 1, true);
        const Sys s2 = random_regular(rng, gen::uniform(rng, 1, 3), m, 1, true);
        const std::size_t k = s1.n() + s2.n();
        const M full = transfer_krylov_stack(s1, s2, k);
        CHECK(full.cols() == k * m);
        CHECK(S::span(full) == S::span(transfer_krylov_stack(s1, s2, k + 3)));
        CHECK(contains(S::span(full), S::span(transfer_krylov_stack(s1, s2, 1))));
    }
}

TEST_CASE("reduced certificate agrees with the general check") {
    gen::Rng rng(75);
    for (int t = 0; t < 60; ++t) {
        const std::size_t m = gen::uniform(rng, 0, 2);
        const Sys s1 = random_regular(rng, gen::uniform(rng, 1, 3), m, 1, true);
        const Sys s2 = gen::coin(rng, 0.5) ? equivalent(rng, s1) : random_regular(rng, gen::uniform(rng, 1, 3), m, 1, true);
        const std::size_t n = s1.n() + s2.n();
        std::vector<Rel> candidates{Rel::span(s1.n(), s2.n(), gen::matrix<Rational>(rng, n, gen::uniform(rng, 0, int(n))))};
        if (const auto mx = maximal_bisimulation(s1, s2); mx.relation) candidates.push_back(*mx.relation);
        for (const auto& r : candidates) {
            const auto cert = check_regular_certificate(r, s1, s2);
            const auto general = is_bisimulation(r, s1, s2).conditions;
            CHECK(cert.dynamics_invariant == general.dynamics_invariant);
            CHECK(cert.inputs_absorbed == general.inputs_absorbed);
            CHECK(cert.outputs_equal == general.outputs_equal);
        }
    }
}
