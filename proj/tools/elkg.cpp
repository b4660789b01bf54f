#include <iostream>

#include "elkg/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return elkg::run_cli(argc, argv, std::cout, std::cerr);
}
