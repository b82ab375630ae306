#include "dynrx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dynrx::run_cli(argc, argv, std::cout, std::cerr); }
