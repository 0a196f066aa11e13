#include <iostream>

#include "honeyauth/cli.hpp"

int main(int argc, char** argv) { return honeyauth::run_cli(argc, argv, std::cout, std::cerr); }
