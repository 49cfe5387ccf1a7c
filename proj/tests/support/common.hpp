#pragma once

#include "daegeo/prime_field.hpp"
#include "daegeo/regular.hpp"

#include <initializer_list>

using daegeo::Rational;
using M = daegeo::Matrix<Rational>;
using S = daegeo::Subspace<Rational>;
using Sys = daegeo::DaeSystem<Rational>;
using Rel = daegeo::Relation<Rational>;

inline M col(std::initializer_list<Rational> v) {
    M m(v.size(), 1);
    std::size_t i = 0;
    for (const auto& x : v) m(i++, 0) = x;
    return m;
}

inline Sys make_sys(M e, M a, M b, M g, M c, std::string name = {}) {
    return Sys(std::move(e), std::move(a), std::move(b), std::move(g), std::move(c), std::move(name));
}

// 1-state integrator x' = u, y = x.
inline Sys integrator() { return make_sys({{1}}, {{0}}, {{1}}, M(1, 0), {{1}}, "integrator"); }

// x' = u, z' = d, y = x: bisimilar to the integrator.
inline Sys disturbed_integrator() {
    return make_sys({{1, 0}, {0, 1}}, {{0, 0}, {0, 0}}, col({1, 0}), col({0, 1}), {{1, 0}}, "disturbed");
}

inline Sys empty_left() { return make_sys({{1, 0}, {0, 0}}, {{1, 0}, {0, 1}}, col({0, 1}), M(2, 0), {{1, 1}}, "empty_left"); }
inline Sys empty_right() { return make_sys({{0, 0}, {0, 1}}, {{1, 0}, {0, 1}}, col({1, 0}), M(2, 0), {{1, 1}}, "empty_right"); }

inline Sys double_integrator() {
    return make_sys({{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}, col({0, 1}), M(2, 0), {{1, 0}}, "double_integrator");
}
