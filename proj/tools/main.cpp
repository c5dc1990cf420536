#include <iostream>

#include "etacoh/cli.hpp"

int main(int argc, char** argv) { return etacoh::run_cli(argc, argv, std::cout, std::cerr); }
