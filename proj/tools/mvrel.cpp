#include <iostream>

#include "mvrel/commands.hpp"

int main(int argc, char** argv) { return mvrel::run_cli(argc, argv, std::cout, std::cerr); }
