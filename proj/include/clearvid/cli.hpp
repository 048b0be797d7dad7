#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace clearvid {

/// Entry point behind the `clearvid` binary. `args` excludes the program
/// name. Returns 0 on success, 1 on input errors, 2 on usage errors and 3 on
/// internal errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace clearvid
