#include "engelcr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return engelcr::run_cli(argc, argv, std::cout, std::cerr); }
