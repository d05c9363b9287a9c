#include <iostream>
#include <string>
#include <vector>

#include "kirigami/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kirigami::cli::run(args, std::cout, std::cerr);
}
