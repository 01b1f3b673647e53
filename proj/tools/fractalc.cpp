#include <iostream>
#include <string>
#include <vector>

#include "fractalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return fractalc::cli::run(args, std::cout, std::cerr);
}
