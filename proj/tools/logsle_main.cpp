#include <iostream>
#include <string>
#include <vector>

#include "logsle/cli.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    return logsle::parse_and_dispatch(args, std::cout, std::cerr);
}
