#include <iostream>

#include "hawktele_cli.hpp"

int main(int argc, char** argv) { return hawktele::cli::cli_main(argc, argv, std::cout, std::cerr); }
