#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fermat::tools {

namespace exit_code {
constexpr int ok = 0;
constexpr int io_error = 1;
constexpr int validation = 2;
constexpr int convergence = 3;
constexpr int usage = 64;
}  // namespace exit_code

/// Entry point of the `fermat` tool.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermat::tools
