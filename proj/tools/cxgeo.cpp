#include "cxgeo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cxgeo::run_cli(argc, argv, std::cout, std::cerr); }
