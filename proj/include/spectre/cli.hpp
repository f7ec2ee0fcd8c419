#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectre/spectrum.hpp"

namespace spectre::cli {

/// Runs one command line (without the program name). Results go to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2/3:1, 1:2" or "{2/3:1, 1:2}" or "5/6,7/6" (multiplicity 1).
Spectrum parse_spectrum_text(const std::string& text);

}  // namespace spectre::cli
