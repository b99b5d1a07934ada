#include <iostream>

#include "negabeta/cli.hpp"

int main(int argc, char** argv) { return negabeta::cli::run(argc, argv, std::cout, std::cerr); }
