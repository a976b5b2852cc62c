#include <iostream>

#include "cohomkit/cli/app.hpp"

int main(int argc, char** argv) { return cohomkit::cli::run_command(argc, argv, std::cout, std::cerr); }
