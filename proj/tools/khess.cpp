// khess: command-line front end.
#include <iostream>
#include <string>
#include <vector>

#include "khess/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return khess::run_cli(args, std::cout, std::cerr);
}
