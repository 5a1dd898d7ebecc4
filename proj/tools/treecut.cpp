#include <iostream>

#include "treecut/cli.hpp"

int main(int argc, char** argv) { return treecut::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
