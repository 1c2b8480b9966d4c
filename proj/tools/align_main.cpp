#include <iostream>

#include "longalign/cli.hpp"

int main(int argc, char** argv) { return longalign::run_cli(argc, argv, std::cout, std::cerr); }
