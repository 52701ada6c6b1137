#include <iostream>

#include "symflat/cli.hpp"

int main(int argc, char** argv) { return symflat::cli::run(argc, argv, std::cout, std::cerr); }
