#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mapspace {

/// Command dispatch for the mapspace tool. Exit codes: 0 success, 2 validation
/// or usage failure, 3 precondition failure.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapspace
