#include "secnoma/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return secnoma::run_cli(argc, argv, std::cout, std::cerr);
}
