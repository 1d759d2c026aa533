#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bflift {

// Runs one command line invocation. Exit codes: 0 ok, 1 validation failure
// or relation violation, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bflift
