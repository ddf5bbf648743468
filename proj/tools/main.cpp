#include <iostream>

#include "finban/cli.hpp"

int main(int argc, char** argv) { return finban::cli_dispatch(argc, argv, std::cout, std::cerr); }
