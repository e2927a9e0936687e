#include <iostream>

#include "fqcurves_cli.hpp"

int main(int argc, char** argv) { return fqc::cli::run(argc, argv, std::cout, std::cerr); }
