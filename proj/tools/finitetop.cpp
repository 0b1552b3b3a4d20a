#include <iostream>

#include "finitetop/cli.hpp"

int main(int argc, char** argv) { return finitetop::cli::run(argc, argv, std::cout, std::cerr); }
