#include "zerorate/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zerorate::run_cli(argc, argv, std::cout, std::cerr); }
