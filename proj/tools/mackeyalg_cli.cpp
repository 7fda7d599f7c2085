#include <iostream>

#include "mackeyalg/cli/commands.hpp"

int main(int argc, char** argv) { return mackeyalg::cli::run(argc, argv, std::cout, std::cerr); }
