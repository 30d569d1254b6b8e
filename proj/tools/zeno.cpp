#include "zeno/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zeno::run_cli(argc, argv, std::cout, std::cerr); }
