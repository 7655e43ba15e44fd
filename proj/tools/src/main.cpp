#include <iostream>
#include <string>
#include <vector>

#include "vqkz/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vqkz::run_cli(args, std::cout, std::cerr);
}
