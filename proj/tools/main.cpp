#include <iostream>

#include "atstop/cli.hpp"

int main(int argc, char** argv) { return atstop::run_cli(argc, argv, std::cout, std::cerr); }
