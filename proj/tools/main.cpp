#include <iostream>

#include "umahler/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return umahler::run_cli(args, std::cout, std::cerr);
}
