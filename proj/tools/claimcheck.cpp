#include <iostream>

#include "claimcheck/cli.hpp"

int main(int argc, char** argv) {
    return claimcheck::cli::run(argc, argv, std::cout, std::cerr);
}
