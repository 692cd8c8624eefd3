#pragma once

#include <iosfwd>

namespace sampspec {

// Entry point of the specbound tool. Returns 0 on success, 2 on usage or
// validation errors and 1 on numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sampspec
