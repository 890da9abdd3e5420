#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evalcast::cli {

/// Runs one `evalcast` invocation. `args` excludes the program name.
/// Tables go to `out`, diagnostics and warnings to `err`. Returns the
/// process exit status: 0 on success, 1 on evaluation errors, 2 on usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evalcast::cli
