#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adlab::cli {

// Entry point behind the `adlab` executable. args[0] is the program name.
// Returns 0 on success, 1 on a domain error (error name printed on `err`),
// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adlab::cli
