#include <iostream>

#include "hilbertlab/cli.hpp"

int main(int argc, char** argv) { return hilbert::cli::run(argc, argv, std::cout, std::cerr); }
