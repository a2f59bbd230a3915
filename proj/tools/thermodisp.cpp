#include <iostream>

#include "thermodisp/cli.hpp"

int main(int argc, char** argv) { return thermodisp::run_cli(argc, argv, std::cout, std::cerr); }
