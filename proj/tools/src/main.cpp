#include <iostream>

#include "picky_cli/cli.hpp"

int main(int argc, char** argv) { return picky::cli::run(argc, argv, std::cout, std::cerr); }
