#include "dbn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dbn::cli::run(argc, argv, std::cout, std::cerr); }
