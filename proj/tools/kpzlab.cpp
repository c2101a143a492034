#include <iostream>

#include "kpzlab/cli.hpp"

int main(int argc, char** argv) { return kpz::run_cli(argc, argv, std::cout, std::cerr); }
