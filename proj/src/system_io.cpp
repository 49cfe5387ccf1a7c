#include "daegeo/system_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

namespace daegeo {

namespace {

using nlohmann::json;

// DOM builder that stores floating-point literals as their source text so
// they can be converted exactly.
class LiteralFloatDom : public nlohmann::detail::json_sax_dom_parser<json> {
public:
    using Base = nlohmann::detail::json_sax_dom_parser<json>;
    using Base::Base;

    bool number_float(number_float_t /*value*/, const string_t& literal) {
        string_t copy = literal;
        return Base::string(copy);
    }
};

Rational entry_from_json(const json& v, const std::string& what) {
    switch (v.type()) {
        case json::value_t::number_integer: return Rational::parse(std::to_string(v.get<std::int64_t>()));
        case json::value_t::number_unsigned: return Rational::parse(std::to_string(v.get<std::uint64_t>()));
        case json::value_t::string: {
            try {
                return Rational::parse(v.get<std::string>());
            } catch (const ParseError& e) {
                throw ParseError(what + ": " + e.what());
            }
        }
        case json::value_t::number_float:
            throw ParseError(what + ": floating-point literal " + v.dump() +
                             " is not exact; write it as a string or enable lossless decimals");
        default: throw ParseError(what + ": entries must be integers or rational strings, got " + v.dump());
    }
}

bool is_bare_empty(const json& j) { return j.is_array() && j.empty(); }

const std::set<std::string> kKeys{"name", "E", "A", "B", "G", "C"};

}  // namespace

json parse_json(std::string_view text, const ParseOptions& options) {
    try {
        if (!options.lossless_decimals) return json::parse(text.begin(), text.end());
        json result;
        LiteralFloatDom dom(result);
        json::sax_parse(text.begin(), text.end(), &dom);
        return result;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

RationalMatrix matrix_from_json(const json& j, const std::string& what) {
    if (j.is_object()) {
        if (j.size() != 2 || !j.contains("rows") || !j.contains("cols") || !j["rows"].is_number_unsigned() ||
            !j["cols"].is_number_unsigned())
            throw ParseError(what + ": an object matrix must be {\"rows\": r, \"cols\": c}");
        const auto r = j["rows"].get<std::size_t>();
        const auto c = j["cols"].get<std::size_t>();
        if (r * c != 0) throw ParseError(what + ": {\"rows\", \"cols\"} is only for empty matrices");
        return RationalMatrix(r, c);
    }
    if (!j.is_array()) throw ParseError(what + ": expected an array of rows");
    if (j.empty()) return RationalMatrix(0, 0);
    const std::size_t rows = j.size();
    std::optional<std::size_t> cols;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array()) throw ParseError(what + ": row " + std::to_string(i) + " is not an array");
        if (cols && j[i].size() != *cols)
            throw ParseError(what + ": ragged rows (row " + std::to_string(i) + " has " +
                             std::to_string(j[i].size()) + " entries, expected " + std::to_string(*cols) + ")");
        cols = j[i].size();
    }
    RationalMatrix m(rows, *cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < *cols; ++k)
            m(i, k) = entry_from_json(j[i][k], what + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    return m;
}

json matrix_to_json(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return json{{"rows", m.rows()}, {"cols", m.cols()}};
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalSystem system_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("system description must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKeys.contains(key)) throw ParseError("unknown key \"" + key + "\" in system description");
    for (const char* key : {"E", "A"})
        if (!j.contains(key)) throw ParseError(std::string("system description lacks \"") + key + "\"");
    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
        name = j["name"].get<std::string>();
    }

    // Bare [] matrices get their shape from the rest of the description.
    std::optional<RationalMatrix> parsed[5];
    const char* keys[5] = {"E", "A", "B", "G", "C"};
    for (int i = 0; i < 5; ++i)
        if (j.contains(keys[i]) && !is_bare_empty(j[keys[i]])) parsed[i] = matrix_from_json(j[keys[i]], keys[i]);
    std::size_t q = 0, n = 0;
    for (int i : {0, 1, 2, 3})
        if (parsed[i]) { q = parsed[i]->rows(); break; }
    for (int i : {0, 1, 4})
        if (parsed[i]) { n = parsed[i]->cols(); break; }

    auto fill = [&](int i, std::size_t r, std::size_t c) {
        if (parsed[i]) return *parsed[i];
        if (r * c != 0)
            throw DimensionError(std::string(keys[i]) + " is empty but the system needs a " + std::to_string(r) + "x" +
                                 std::to_string(c) + " matrix");
        return RationalMatrix(r, c);
    };
    return RationalSystem(fill(0, q, n), fill(1, q, n), fill(2, q, 0), fill(3, q, 0), fill(4, 0, n), name);
}

json system_to_json(const RationalSystem& sys) {
    return json{{"name", sys.name()},         {"E", matrix_to_json(sys.e())}, {"A", matrix_to_json(sys.a())},
                {"B", matrix_to_json(sys.b())}, {"G", matrix_to_json(sys.g())}, {"C", matrix_to_json(sys.c())}};
}

RationalSystem parse_system(std::string_view text, const ParseOptions& options) {
    return system_from_json(parse_json(text, options));
}

std::string serialize_system(const RationalSystem& sys) { return system_to_json(sys).dump(2) + "\n"; }

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RationalSystem load_system(const std::string& path, const ParseOptions& options) {
    return parse_system(read_text(path), options);
}

}  // namespace daegeo
