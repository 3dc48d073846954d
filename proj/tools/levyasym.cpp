#include <iostream>

#include "levy/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return levy::run_cli(std::move(args), std::cout, std::cerr);
}
