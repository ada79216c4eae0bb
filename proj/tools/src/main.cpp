#include "bilgamma_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bilgamma::cli::run(args, std::cout, std::cerr);
}
