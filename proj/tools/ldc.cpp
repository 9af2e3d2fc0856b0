#include <iostream>

#include "ldc/workbench/cli.hpp"

int main(int argc, char** argv) { return ldc::workbench::run_cli(argc, argv, std::cout, std::cerr); }
