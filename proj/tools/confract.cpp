#include <iostream>

#include "confract/cli.hpp"

int main(int argc, char** argv) { return confract::cli::run(argc, argv, std::cout, std::cerr); }
