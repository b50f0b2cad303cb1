#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadric::cli {

/// Exit codes: 0 all checks pass / certificate obtained, 1 a check failed
/// or hypotheses unmet, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadric::cli
