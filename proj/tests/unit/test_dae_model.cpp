#include <catch2/catch_amalgamated.hpp>

#include "../support/common.hpp"
#include "../support/generators.hpp"

#include "daegeo/geometric.hpp"
#include "daegeo/system_io.hpp"
#include "daegeo/transforms.hpp"

using namespace daegeo;

TEST_CASE("parse the integrator file") {
    const Sys s = parse_system(R"({"name": "int", "E": [[1]], "A": [[0]], "B": [[1]], "G": {"rows": 1, "cols": 0},
                                  "C": [[1]]})");
    CHECK(s.n() == 1);
    CHECK(s.q() == 1);
    CHECK(s.m() == 1);
    CHECK(s.s() == 0);
    CHECK(s.p() == 1);
    CHECK(s.name() == "int");
}

TEST_CASE("parse the first system of the regular-pencil counterexample") {
    const Sys s = load_system(std::string(DAEGEO_TEST_DATA) + "/empty_left.json");
    CHECK(s.q() == 2);
    CHECK(s.n() == 2);
    CHECK(s.m() == 1);
    CHECK(s.s() == 0);
    CHECK(s.p() == 1);
    CHECK(s == empty_left());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_system(R"({"E": [[1, 0], [0, 1]], "A": [[1, 0, 0], [0, 1, 0]]})"), DimensionError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[1, 0], [0]], "A": [[1, 0], [0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [["1/0"]], "A": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [["x"]], "A": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[0.5]], "A": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[1]], "A": [[1]], "F": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"A": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[1]], "A": [[1]])"), ParseError);
    CHECK_THROWS_AS(parse_system(R"([1, 2])"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[1]], "A": [[1]], "B": [[1], [2]]})"), DimensionError);
    CHECK_THROWS_AS(parse_system(R"({"E": [[1]], "A": [], "B": [[1]]})"), DimensionError);
}

TEST_CASE("exact entries and lossless decimals") {
    const Sys s = parse_system(R"({"E": [["-3/6", "0.25"]], "A": [["1e2", 7]]})");
    CHECK(s.e() == M{{Rational(-1, 2), Rational(1, 4)}});
    CHECK(s.a() == M{{100, 7}});
    CHECK(s.b().rows() == 1);
    CHECK(s.b().cols() == 0);
    CHECK(s.c().rows() == 0);
    const Sys d = parse_system(R"({"E": [[0.1]], "A": [[-2.5e-1]]})", ParseOptions{true});
    CHECK(d.e() == M{{Rational(1, 10)}});
    CHECK(d.a() == M{{Rational(-1, 4)}});
}

TEST_CASE("empty matrices take their shape from context") {
    const Sys s = parse_system(R"({"E": [[1, 0]], "A": [[0, 1]], "B": [], "G": [], "C": []})");
    CHECK(s.b() == M(1, 0));
    CHECK(s.g() == M(1, 0));
    CHECK(s.c() == M(0, 2));
    const Sys z = parse_system(R"({"E": {"rows": 0, "cols": 3}, "A": [], "C": [[1, 2, 3]]})");
    CHECK(z.q() == 0);
    CHECK(z.n() == 3);
    CHECK(z.a() == M(0, 3));
}

TEST_CASE("serialize and parse round trip") {
    gen::Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        gen::Shape sh{std::size_t(gen::uniform(rng, 0, 3)), std::size_t(gen::uniform(rng, 0, 3)),
                      std::size_t(gen::uniform(rng, 0, 2)), std::size_t(gen::uniform(rng, 0, 2)),
                      std::size_t(gen::uniform(rng, 0, 2))};
        const Sys s = gen::system<Rational>(rng, sh, false).renamed("r" + std::to_string(t));
        const std::string text = serialize_system(s);
        CHECK(parse_system(text) == s);
        CHECK(serialize_system(parse_system(text)) == text);
    }
}

TEST_CASE("system validation") {
    CHECK_THROWS_AS(make_sys(M::identity(2), M::identity(3), M(2, 0), M(2, 0), M(0, 2)), DimensionError);
    CHECK_THROWS_AS(make_sys(M::identity(2), M::identity(2), M(3, 1), M(2, 0), M(0, 2)), DimensionError);
    CHECK_THROWS_AS(make_sys(M::identity(2), M::identity(2), M(2, 1), M(2, 0), M(1, 3)), DimensionError);
    CHECK_NOTHROW(make_sys(M(0, 0), M(0, 0), M(0, 0), M(0, 0), M(0, 0)));
}

TEST_CASE("disturbance elimination examples") {
    const Sys plain = make_sys(M::identity(2), {{1, 2}, {3, 4}}, col({1, 1}), M(2, 1), {{1, 0}});
    const auto none = eliminate_disturbance(plain);
    CHECK(none.reduced.e() == plain.e());
    CHECK(none.reduced.a() == plain.a());
    CHECK(none.reduced.s() == 0);

    const Sys one = make_sys(M::identity(2), {{1, 2}, {3, 4}}, col({1, 1}), col({0, 1}), {{1, 0}});
    const auto r = eliminate_disturbance(one);
    CHECK(r.g_perp == M{{1, 0}});
    CHECK(r.reduced.q() == 1);
    CHECK(r.reduced.e() == M{{1, 0}});
    CHECK(r.reduced.a() == M{{1, 2}});
    CHECK(r.g_dagger * one.g() == M::identity(1));

    const Sys full = make_sys(M::identity(3), M(3, 3), M(3, 1), M::identity(3), M(1, 3));
    CHECK(eliminate_disturbance(full).reduced.q() == 0);
}

TEST_CASE("disturbance elimination properties") {
    gen::Rng rng(32);
    for (int t = 0; t < 100; ++t) {
        const Sys s = gen::square_system<Rational>(rng, 4, 3);
        const auto r = eliminate_disturbance(s);
        CHECK((r.g_perp * s.g()).is_zero());
        CHECK(r.g_perp.rows() == s.q() - rank(s.g()));
        CHECK(rank(r.p_matrix) == s.q());
        CHECK(r.p_matrix.rows() == s.q());
        if (rank(s.g()) == s.s()) CHECK(r.g_dagger * s.g() == M::identity(s.s()));
        // the reduced system has the same consistent subspace
        const auto c0 = consistent_subset(s), c1 = consistent_subset(r.reduced);
        CHECK(c0.v_star == c1.v_star);
        // any other valid annihilator gives the same answer
        const M other = gen::invertible<Rational>(rng, r.g_perp.rows()) * r.g_perp;
        const Sys alt = Sys::without_disturbance(other * s.e(), other * s.a(), other * s.b(), s.c());
        CHECK(consistent_subset(alt).v_star == c0.v_star);
    }
}

TEST_CASE("special form examples") {
    const Sys ode = Sys::without_disturbance(M::identity(2), {{1, 2}, {3, 4}}, col({1, 0}), {{1, 1}});
    const auto a = to_special_form(ode);
    CHECK(a.s_matrix == M::identity(2));
    CHECK(a.t_matrix == M::identity(2));
    CHECK(a.n_a == 2);
    CHECK(a.n_b == 0);

    const auto b = to_special_form(empty_left());
    CHECK(b.n_a == 1);
    CHECK(b.n_b == 1);
    CHECK(b.a_aa == M{{1}});
    CHECK(b.a_bb == M{{1}});
    CHECK(b.b_b == M{{1}});

    const Sys alg = Sys::without_disturbance(M(2, 2), {{1, 2}, {3, 4}}, M(2, 0), M(0, 2));
    const auto c = to_special_form(alg);
    CHECK(c.n_a == 0);
    CHECK(c.a_bb == c.s_matrix * alg.a() * c.t_matrix);

    CHECK_THROWS_AS(to_special_form(disturbed_integrator()), HasDisturbances);
}

TEST_CASE("special form properties") {
    gen::Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        gen::Shape sh{std::size_t(gen::uniform(rng, 0, 4)), std::size_t(gen::uniform(rng, 0, 4)),
                      std::size_t(gen::uniform(rng, 0, 2)), 0, std::size_t(gen::uniform(rng, 0, 2))};
        const Sys s = gen::system<Rational>(rng, sh, gen::coin(rng, 0.7));
        const auto sf = to_special_form(s);
        M ident(s.q(), s.n());
        for (std::size_t i = 0; i < sf.n_a; ++i) ident(i, i) = 1;
        CHECK(sf.s_matrix * s.e() * sf.t_matrix == ident);
        CHECK(sf.n_a == rank(s.e()));
        const M sat = vstack(hstack(sf.a_aa, sf.a_ab), hstack(sf.a_ba, sf.a_bb));
        const M s_inv = inverse(sf.s_matrix), t_inv = inverse(sf.t_matrix);
        CHECK(s_inv * sat * t_inv == s.a());
        CHECK(s_inv * vstack(sf.b_a, sf.b_b) == s.b());
        CHECK(hstack(sf.c_a, sf.c_b) * t_inv == s.c());
    }
}

TEST_CASE("input extension examples") {
    const Sys same = Sys::without_disturbance(M::identity(2), M(2, 2), M(2, 0), M(1, 2));
    CHECK(extend_input(same) == same);

    const Sys ext = extend_input(integrator());
    CHECK(ext.e() == M{{1, 0}});
    CHECK(ext.a() == M{{0, 1}});
    CHECK(ext.n() == 2);
    CHECK(ext.m() == 0);
    CHECK(ext.c() == M{{1, 0}});

    const Sys ext_e = extend_input(empty_left());
    CHECK(ext_e.e() == M{{1, 0, 0}, {0, 0, 0}});
    CHECK(ext_e.a() == M{{1, 0, 0}, {0, 1, 1}});
}

TEST_CASE("consistent states project into the extended consistent subspace") {
    gen::Rng rng(34);
    for (int t = 0; t < 100; ++t) {
        const Sys s = gen::square_system<Rational>(rng, 4, 2);
        const auto v = consistent_subset(s).v_star;
        if (!v) continue;
        const auto ve = consistent_subset(extend_input(s)).v_star;
        REQUIRE(ve);
        const S projected = S::span(ve->basis().row_range(0, s.n()));
        CHECK(contains(projected, *v));
    }
}
