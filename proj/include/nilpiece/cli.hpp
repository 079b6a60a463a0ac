#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nilpiece {

/// Runs the command line (arguments without the program name). Exit codes:
/// 0 success, 1 mathematical finding, 2 usage, input or size error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Smallest-parameter run of the acceptance checks, printed as a checklist.
/// With `inject_fault` the GF(4) multiplication table is corrupted first.
int selftest(std::ostream& out, bool inject_fault);

}  // namespace nilpiece
