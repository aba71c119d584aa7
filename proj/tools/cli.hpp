#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbic::cli {

// Exit codes: 0 ok, 1 negative verdict under --strict, 2 bad input, 3 cost guard, 4 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbic::cli
