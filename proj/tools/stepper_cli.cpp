#include "stepper/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stepper::cli::run(argc, argv, std::cout, std::cerr); }
