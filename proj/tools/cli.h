#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapperscope::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kPipelineError = 3 };

// Runs one command line (args excludes the program name). `serve` blocks.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapperscope::cli
