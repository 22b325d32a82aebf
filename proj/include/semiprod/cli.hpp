#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code: 0 on success, 1 when --verify finds a
// mismatch, 2 on usage, input or parameter errors.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semiprod::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

}  // namespace semiprod::cli
