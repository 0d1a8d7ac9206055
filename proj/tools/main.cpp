#include <iostream>

#include "idealdnf/cli.hpp"

int main(int argc, char** argv) { return idealdnf::cli::run(argc, argv, std::cout, std::cerr); }
