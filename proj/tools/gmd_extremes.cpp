#include <iostream>

#include "gmdx/cli.hpp"

int main(int argc, char** argv) { return gmdx::cli::run(argc, argv, std::cout, std::cerr); }
