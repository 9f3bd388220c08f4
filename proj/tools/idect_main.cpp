#include <iostream>

#include "idect/cli.hpp"

int main(int argc, char** argv) { return idect::run_cli(argc, argv, std::cout, std::cerr); }
