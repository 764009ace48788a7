#include <iostream>

#include "cslrank/cli.hpp"

int main(int argc, char** argv) { return cslrank::cli_main(argc, argv, std::cout, std::cerr); }
