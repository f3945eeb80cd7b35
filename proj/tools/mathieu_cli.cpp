#include <iostream>

#include "mathieu/cli.hpp"

int main(int argc, char** argv) { return mathieu::cli::run(argc, argv, std::cout, std::cerr); }
