#include <iostream>

#include "ballbody/cli.hpp"

int main(int argc, char** argv) { return ballbody::cli_main(argc, argv, std::cout, std::cerr); }
