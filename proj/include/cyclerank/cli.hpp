#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cyclerank::cli {

enum ExitCode : int {
    kOk = 0,
    kNonEmpty = 1,
    kUsage = 2,
    kCap = 3,
};

using Getenv = std::function<std::optional<std::string>(const char*)>;

std::optional<std::string> system_getenv(const char* name);

/// Runs one command line (without the program name). `-` as a matrix
/// argument reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Getenv& getenv = system_getenv);

} // namespace cyclerank::cli
