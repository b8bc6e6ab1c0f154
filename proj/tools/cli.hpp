#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ultra::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0 for an affirmative result, 1 for a definite
/// negative (with its certificate printed) and 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ultra::cli
