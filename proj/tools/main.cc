#include <iostream>
#include <string>
#include <vector>

#include "commands.h"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return witness_forge::cli::run(args, std::cout, std::cerr);
}
