#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "splice/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string stdin_text;
    for (const auto& a : args)
        if (a == "-") {
            std::ostringstream os;
            os << std::cin.rdbuf();
            stdin_text = os.str();
            break;
        }
    splice::CommandResult r = splice::run_command(args, stdin_text);
    std::cout << r.output;
    std::cerr << r.log;
    return r.exit_code;
}
