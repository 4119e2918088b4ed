#include <iostream>

#include "miniaj/cli.hpp"

int main(int argc, char** argv) { return miniaj::cliMain(argc, argv, std::cout, std::cerr); }
