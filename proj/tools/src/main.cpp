#include "cubenorm_cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return cubenorm::cli::run_cli(argc, argv, std::cout, std::cerr); }
