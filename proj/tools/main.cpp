#include <iostream>
#include <vector>

#include "mapspace/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return mapspace::cli_run(args, std::cout, std::cerr);
}
