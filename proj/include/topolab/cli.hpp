#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topolab {
namespace cli {

/// Runs the command line given argv-style arguments (program name excluded).
/// Exit codes: 0 success, 1 usage or schema error, 2 precondition violation,
/// 3 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cli
} // namespace topolab
