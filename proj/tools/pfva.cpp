#include <pfva/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return pfva::run_cli(argc, argv, std::cout, std::cerr); }
