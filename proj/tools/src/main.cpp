#include <iostream>
#include <string>
#include <vector>

#include "fermat/tools/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fermat::tools::run(args, std::cout, std::cerr);
}
