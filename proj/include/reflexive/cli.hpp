#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace reflexive {

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 domain error (not reflexive, wrong dimension, ...), 2 usage or parse error.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace reflexive
