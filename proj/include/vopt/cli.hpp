#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vopt {

/// Entry point behind the vopt binary. Returns the process exit code:
/// 0 success, 1 failed catalog expectations, 2 parse/config errors,
/// 3 inconclusive probe outcomes (the report is still written).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vopt
