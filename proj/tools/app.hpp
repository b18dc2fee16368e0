#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace delaylab::cli {

enum ExitCode : int { ok = 0, invalid = 1, falsified = 2, diverged = 3 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace delaylab::cli
