#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace daegeo::cli {

/// Runs one command line (without the program name). Returns 0 when the
/// property holds, 1 when it fails cleanly and 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daegeo::cli
