#include <iostream>

#include "compsem/cli.hpp"

int main(int argc, char** argv) { return compsem::run_cli(argc, argv, std::cout, std::cerr); }
