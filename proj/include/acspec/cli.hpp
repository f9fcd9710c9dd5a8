#ifndef ACSPEC_CLI_HPP
#define ACSPEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace acspec {

/// Runs the acspec command line. args excludes argv[0]. Exit codes:
/// 0 success (all cross-checks match or have no formula), 1 mismatch or
/// runtime failure, 2 unknown groupoid/formula id, 3 malformed input file,
/// 4 cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acspec

#endif
