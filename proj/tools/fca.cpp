#include <iostream>

#include "fca/cli.hpp"

int main(int argc, char** argv) { return fca::cli::run(argc, argv, std::cout, std::cerr); }
