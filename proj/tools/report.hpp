#pragma once

#include "daegeo/prime_field.hpp"
#include "daegeo/simrel.hpp"
#include "daegeo/system_io.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

namespace daegeo::cli {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes);

struct LoadedSystem {
    std::string path;
    std::string sha256;
    RationalSystem sys;
};

LoadedSystem load_input(const std::string& path, const ParseOptions& options);
json input_json(const LoadedSystem& in);

template <Field F>
F from_rational(const Rational& r) {
    if constexpr (std::is_same_v<F, Rational>)
        return r;
    else
        return F::from_rational(r);
}

template <Field F>
Matrix<F> convert(const RationalMatrix& m) {
    return map_entries<F>(m, [](const Rational& r) { return from_rational<F>(r); });
}

template <Field F>
DaeSystem<F> convert(const RationalSystem& sys) {
    return map_system<F>(sys, [](const Rational& r) { return from_rational<F>(r); });
}

template <Field F>
json matrix_json(const Matrix<F>& m) {
    if (m.rows() == 0 || m.cols() == 0) return json{{"rows", m.rows()}, {"cols", m.cols()}};
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

template <Field F>
Matrix<F> matrix_from(const json& j, std::size_t rows, const std::string& what) {
    RationalMatrix m = matrix_from_json(j, what);
    if (m.rows() == 0 && m.cols() == 0) m = RationalMatrix(rows, 0);
    if (m.rows() != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows, found " + std::to_string(m.rows()));
    return convert<F>(m);
}

template <Field F>
json subspace_json(const Subspace<F>& s) {
    return json{{"kind", "subspace"}, {"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", matrix_json(s.basis())}};
}

template <Field F>
Subspace<F> subspace_from(const json& j) {
    const auto ambient = j.at("ambient").get<std::size_t>();
    return Subspace<F>::span(matrix_from<F>(j.at("basis"), ambient, "certificate basis"));
}

template <Field F>
json relation_json(const Relation<F>& r) {
    return json{{"kind", "relation"}, {"n1", r.n1}, {"n2", r.n2}, {"dim", r.space.dim()},
                {"basis", matrix_json(r.space.basis())}};
}

template <Field F>
Relation<F> relation_from(const json& j) {
    const auto n1 = j.at("n1").get<std::size_t>();
    const auto n2 = j.at("n2").get<std::size_t>();
    return Relation<F>::span(n1, n2, matrix_from<F>(j.at("basis"), n1 + n2, "certificate basis"));
}

json conditions_json(const Conditions& c);

/// Calls fn(F{}) with the field named by name: "rational" or "gf:P" for a
/// supported prime P.
template <typename Fn>
decltype(auto) with_field(const std::string& name, Fn&& fn) {
    if (name == "rational") return fn(Rational{});
    if (name == "gf:2") return fn(PrimeField<2>{});
    if (name == "gf:3") return fn(PrimeField<3>{});
    if (name == "gf:5") return fn(PrimeField<5>{});
    if (name == "gf:7") return fn(PrimeField<7>{});
    if (name == "gf:11") return fn(PrimeField<11>{});
    if (name == "gf:13") return fn(PrimeField<13>{});
    throw ParseError("unsupported field '" + name + "' (use rational or gf:P with P in 2, 3, 5, 7, 11, 13)");
}

/// Re-verifies a report produced by one of the commands. Returns 0 when
/// the recorded verdict and certificate are confirmed, 1 otherwise.
int check_report(const json& report, std::ostream& out);

}  // namespace daegeo::cli
