#include <iostream>

#include "jckerr/cli/app.hpp"

int main(int argc, char** argv) { return jckerr::cli::run(argc, argv, std::cout, std::cerr); }
