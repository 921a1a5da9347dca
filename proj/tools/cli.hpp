#pragma once

#include <iosfwd>
#include <string>

namespace qpair::cli {

/// Parses arguments and runs one command. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "%.12g", with negative zero printed as 0.
std::string format_double(double x);

}  // namespace qpair::cli
