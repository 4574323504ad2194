#include <iostream>

#include "wavespace/cli.hpp"

int main(int argc, char** argv) { return wavespace::cli::run(argc, argv, std::cout, std::cerr); }
