#pragma once

#include <iosfwd>

namespace genecon::cli {

/// Runs the genecon command line. Returns 0 on success, 1 on runtime
/// failures and 2 on usage or validation errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genecon::cli
