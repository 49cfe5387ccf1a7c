#include <catch2/catch_amalgamated.hpp>

#include "../support/common.hpp"
#include "../support/generators.hpp"
#include "../support/lattice.hpp"

using namespace daegeo;
using GF2 = PrimeField<2>;

namespace {

S e1() { return S::span(col({1, 0})); }
S e2() { return S::span(col({0, 1})); }

S random_subspace(gen::Rng& rng, std::size_t n) {
    return S::span(gen::low_rank<Rational>(rng, n, gen::uniform(rng, 0, 3), gen::uniform(rng, 0, int(n))));
}

}  // namespace

TEST_CASE("sum examples") {
    CHECK(sum(e1(), e2()).is_full());
    CHECK(sum(e1(), S::zero(2)) == e1());
    CHECK(sum(S::span(col({1, 1})), S::span(col({1, -1}))) == S::full(2));
    CHECK_THROWS_AS(sum(e1(), S::zero(3)), DimensionMismatch);
}

TEST_CASE("intersect examples") {
    CHECK(intersect(e1(), e1()) == e1());
    CHECK(intersect(e1(), e2()).is_zero());
    CHECK(intersect(S::full(2), S::span(col({1, 1}))).dim() == 1);
    CHECK_THROWS_AS(intersect(e1(), S::zero(1)), DimensionMismatch);
}

TEST_CASE("image and preimage examples") {
    const S v = S::span(col({2, 3}));
    CHECK(image_of(M::identity(2), v) == v);
    CHECK(image_of(M(2, 2), v).is_zero());
    CHECK(image_of(M{{1, 0}, {0, 0}}, S::full(2)) == e1());
    CHECK(preimage(M::identity(2), v) == v);
    CHECK(preimage(M{{1, 2}, {3, 4}, {5, 6}}, S::full(3)) == S::full(2));
    CHECK(preimage(M{{1, 0}, {0, 0}}, e1()) == S::full(2));
    CHECK_THROWS_AS(image_of(M::identity(3), v), DimensionMismatch);
    CHECK_THROWS_AS(preimage(M::identity(3), v), DimensionMismatch);
}

TEST_CASE("contains examples") {
    CHECK(contains(e1(), S::zero(2)));
    CHECK_FALSE(contains(e1(), e2()));
    CHECK(contains(S::span(M{{1, 1}, {0, 1}}), e2()));
}

TEST_CASE("product embedding examples") {
    CHECK(product_embed(S::full(1), S::zero(1)) == S::span(col({1, 0})));
    CHECK(product_embed(S::zero(1), S::zero(1)).is_zero());
    CHECK(product_embed(e1(), S::full(3)).dim() == 4);
}

TEST_CASE("canonical bases make equal subspaces identical") {
    CHECK(S::span(M{{1, 2}, {1, 2}}) == S::span(col({3, 3})));
    CHECK(S::span(M{{1, 0}, {0, 1}}).basis() == M::identity(2));
    gen::Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = gen::uniform(rng, 1, 5);
        const S u = random_subspace(rng, n), v = random_subspace(rng, n);
        CHECK(sum(u, v) == sum(v, u));
        CHECK(intersect(u, v) == intersect(v, u));
        // a random change of generators leaves the canonical form alone
        const M mixed = u.basis() * gen::invertible<Rational>(rng, u.dim());
        CHECK(S::span(mixed) == u);
    }
}

TEST_CASE("Grassmann identity and image/preimage adjunction") {
    gen::Rng rng(22);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = gen::uniform(rng, 1, 5);
        const S u = random_subspace(rng, n), v = random_subspace(rng, n);
        CHECK(sum(u, v).dim() + intersect(u, v).dim() == u.dim() + v.dim());
        CHECK(contains(u, intersect(u, v)));
        CHECK(contains(sum(u, v), v));
        const M m = gen::matrix<Rational>(rng, gen::uniform(rng, 1, 5), n);
        const S w = random_subspace(rng, m.rows());
        CHECK(contains(w, image_of(m, preimage(m, w))));
        CHECK(contains(preimage(m, image_of(m, u)), u));
        CHECK(contains(preimage(m, w), null_space(m)));
    }
}

TEST_CASE("GF(2) operations match exhaustive enumeration") {
    gen::Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = gen::uniform(rng, 1, 4);
        const std::size_t r = gen::uniform(rng, 1, 4);
        const auto a = gen::matrix<GF2>(rng, n, gen::uniform(rng, 0, 3), 0.4);
        const auto b = gen::matrix<GF2>(rng, n, gen::uniform(rng, 0, 3), 0.4);
        const auto m = gen::matrix<GF2>(rng, r, n, 0.4);
        const auto w = gen::matrix<GF2>(rng, r, gen::uniform(rng, 0, 3), 0.4);
        const auto su = Subspace<GF2>::span(a), sv = Subspace<GF2>::span(b), sw = Subspace<GF2>::span(w);

        const oracle::Space space{2, n};
        const auto ou = oracle::span_of(space, oracle::columns(oracle::to_map(a)));
        const auto ov = oracle::span_of(space, oracle::columns(oracle::to_map(b)));
        const auto ow = oracle::span_of(oracle::Space{2, r}, oracle::columns(oracle::to_map(w)));
        const auto om = oracle::to_map(m);

        CHECK(oracle::from_subspace(su) == ou);
        CHECK(oracle::from_subspace(sum(su, sv)) == oracle::sum(ou, ov));
        CHECK(oracle::from_subspace(intersect(su, sv)) == oracle::intersect(ou, ov));
        CHECK(oracle::from_subspace(image_of(m, su)) == oracle::image(om, ou));
        CHECK(oracle::from_subspace(preimage(m, sw)) == oracle::preimage(om, ow));
        CHECK(oracle::from_subspace(null_space(m)) == oracle::kernel(om));
        CHECK(contains(su, sv) == oracle::subset(ov, ou));
        CHECK(oracle::from_subspace(product_embed(su, sw)) == oracle::product(ou, ow));
    }
}
