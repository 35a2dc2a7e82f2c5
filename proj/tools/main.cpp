#include <iostream>

#include "degloc/cli.hpp"

int main(int argc, char** argv) { return degloc::run(argc, argv, std::cout, std::cerr); }
