#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace dsuq {

// Exit codes: 0 success, 2 config/usage rejection, 3 numeric or I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace dsuq
