#include <iostream>

#include "logcvx/cli.hpp"

int main(int argc, char** argv) { return logcvx::run_cli(argc, argv, std::cout, std::cerr); }
