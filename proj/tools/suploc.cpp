#include <iostream>

#include "suploc/cli.hpp"

int main(int argc, char** argv) { return suploc::run_cli(argc, argv, std::cout, std::cerr); }
