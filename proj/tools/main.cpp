#include <iostream>

#include "coreq/cli.hpp"

int main(int argc, char** argv) { return coreq::run(argc, argv, std::cout, std::cerr); }
