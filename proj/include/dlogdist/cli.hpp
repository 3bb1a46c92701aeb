#pragma once

#include <iosfwd>

namespace dlogdist {

// Dispatches one subcommand and writes a single JSON document (or CSV rows)
// to `out`. Returns 0 when every check passes, 1 when a check fails, 2 on
// usage or validation errors (message on `err`).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dlogdist
