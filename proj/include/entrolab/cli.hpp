#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entrolab {

// Runs one CLI invocation (subcommands: estimate, rates, coverage, maxent,
// lowerbound). Successful output goes to `out` unless --output redirects it
// to a file; failures emit a one-line error JSON on `out`. Returns the
// process exit code: 0 ok, 2 validation/precondition failure, 3 numeric
// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace entrolab
