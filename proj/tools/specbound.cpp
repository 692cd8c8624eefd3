#include "sampspec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sampspec::run_cli(argc, argv, std::cout, std::cerr); }
