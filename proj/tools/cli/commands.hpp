#pragma once

#include <ostream>

namespace hyperq::cli {

inline constexpr const char* kToolVersion = "hyperq 0.1.0";

/// Runs the command line. Returns 0 when every requested check passes,
/// 1 when a check fails and 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperq::cli
