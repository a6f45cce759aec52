#include <iostream>

#include "svw/cli.hpp"

int main(int argc, char** argv) { return svw::cli::run(argc, argv, std::cout, std::cerr); }
