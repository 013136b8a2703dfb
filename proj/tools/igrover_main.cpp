#include <iostream>

#include "igrover/cli.hpp"

int main(int argc, char** argv) { return igrover::cli::main(argc, argv, std::cout, std::cerr); }
