#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace circleconv::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 2 for configuration or parse errors, 3 when a cap is hit or
/// a numeric method fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circleconv::cli
