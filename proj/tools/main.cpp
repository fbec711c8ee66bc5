#include <iostream>

#include "congest/cli.hpp"

int main(int argc, char** argv) { return congest::run_cli(argc, argv, std::cout, std::cerr); }
