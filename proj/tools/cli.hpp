#ifndef GM_TOOLS_CLI_HPP
#define GM_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gm::cli {

/// Exit codes: 0 ok, 1 usage, 2 input error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gm::cli

#endif
