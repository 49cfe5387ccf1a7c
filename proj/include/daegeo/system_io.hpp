#pragma once

#include "daegeo/regular.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace daegeo {

struct ParseOptions {
    /// Accept bare JSON numbers with a fraction or exponent, converting the
    /// literal text exactly. Off by default: such numbers are rejected.
    bool lossless_decimals = false;
};

/// Parses the JSON system format
///
///     {"name": "...", "E": [[...]], "A": ..., "B": ..., "G": ..., "C": ...}
///
/// Entries are integers or strings ("3", "-2/5", "0.125"). An empty matrix
/// is written {"rows": r, "cols": c}; a bare [] takes its known dimension
/// from the other matrices. B, G and C may be omitted (empty).
RationalSystem parse_system(std::string_view text, const ParseOptions& options = {});

/// Reads a system from a file, or from standard input when path is "-".
RationalSystem load_system(const std::string& path, const ParseOptions& options = {});

/// Canonical JSON text: entries as strings, empty matrices as
/// {"rows", "cols"}. parse_system(serialize_system(s)) == s.
std::string serialize_system(const RationalSystem& sys);

nlohmann::json system_to_json(const RationalSystem& sys);
RationalSystem system_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const RationalMatrix& m);
/// Accepts nested arrays or {"rows", "cols"} for empty matrices. An empty
/// array yields an empty matrix of shape 0x0.
RationalMatrix matrix_from_json(const nlohmann::json& j, const std::string& what);

/// Parses JSON text; floats are kept as their literal text when
/// options.lossless_decimals is set, otherwise rejected at conversion.
nlohmann::json parse_json(std::string_view text, const ParseOptions& options = {});

std::string read_text(const std::string& path);

}  // namespace daegeo
