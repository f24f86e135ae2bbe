#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebc::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, no_witness = 3 };

// args excludes the program name. Data goes to out, diagnostics to err.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace ebc::cli
