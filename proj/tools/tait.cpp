#include <iostream>

#include "tait/cli.hpp"

int main(int argc, char** argv) { return tait::run_command(argc, argv, std::cout, std::cerr); }
