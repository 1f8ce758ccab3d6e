#include <iostream>

#include "cmgeval/commands.hpp"

int main(int argc, char** argv) { return cmgeval::cli::main_entry(argc, argv, std::cout, std::cerr); }
