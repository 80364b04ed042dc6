#include <iostream>

#include "agealg/cli.hpp"

int main(int argc, char** argv) { return agealg::run_cli(argc, argv, std::cout, std::cerr); }
