#include <iostream>

#include "bakerrays/cli.hpp"

int main(int argc, char** argv) { return baker::cli_dispatch(argc, argv, std::cout, std::cerr); }
