#include <iostream>

#include "qzak/cli.hpp"

int main(int argc, char** argv) { return qzak::run_cli(argc, argv, std::cout, std::cerr); }
