#pragma once

#include <ostream>

namespace mvrel {

/// Command-line entry point. Writes JSON results to `out` and diagnostics to
/// `err`. Exit codes: 0 ok, 1 verification or hypothesis failure, 2 usage,
/// parse or dimension error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mvrel
