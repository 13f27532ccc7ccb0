#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlp {

/// Command-line front end: `solve`, `model`, `translate`, `check`.
/// Exit codes: 0 success (for solve: at least one answer; for check: valid),
/// 1 no answer / invalid, 2 usage or parse error, 3 unknown verdict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qlp
