#pragma once

#include <string>
#include <vector>

namespace dynlis {

// Command-line front end. `args` excludes the program name. Exit codes:
// 0 ok, 1 verification mismatch or failing op, 2 usage/parse error, 3 I/O.
int run_cli(const std::vector<std::string>& args);

}  // namespace dynlis
