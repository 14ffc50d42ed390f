#include "arclab/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return arclab::cli::run(argc, argv, std::cout, std::cerr); }
