#include "report.hpp"

#include <openssl/evp.h>

#include <array>
#include <iomanip>
#include <memory>
#include <sstream>

namespace daegeo::cli {

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

LoadedSystem load_input(const std::string& path, const ParseOptions& options) {
    const std::string text = read_text(path);
    return {path, sha256_hex(text), parse_system(text, options)};
}

json input_json(const LoadedSystem& in) {
    return json{{"path", in.path}, {"sha256", in.sha256}, {"system", system_to_json(in.sys)}};
}

json conditions_json(const Conditions& c) {
    return json{{"disturbances_matched", c.disturbances_matched},
                {"dynamics_invariant", c.dynamics_invariant},
                {"inputs_absorbed", c.inputs_absorbed},
                {"outputs_equal", c.outputs_equal},
                {"left_within_consistent", c.left_within_consistent},
                {"right_within_consistent", c.right_within_consistent},
                {"left_covers_consistent", c.left_covers_consistent},
                {"right_covers_consistent", c.right_covers_consistent}};
}

}  // namespace daegeo::cli
