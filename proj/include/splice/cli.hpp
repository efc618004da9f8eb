#ifndef SPLICE_CLI_HPP
#define SPLICE_CLI_HPP

#include <string>
#include <vector>

namespace splice {

// Exit code 0: success; 1: domain failure (still JSON on stdout); 2: usage.
// output goes to stdout, log to stderr; the two never interleave.
struct CommandResult {
    int exit_code = 0;
    std::string output;
    std::string log;
};

// args excludes the program name. stdin_text backs the "-" input path.
CommandResult run_command(const std::vector<std::string>& args,
                          const std::string& stdin_text = std::string());

}  // namespace splice

#endif
