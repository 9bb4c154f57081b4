#include <iostream>
#include <string>
#include <vector>

#include "pdna/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return pdna::cli_dispatch(args, std::cout, std::cerr);
}
