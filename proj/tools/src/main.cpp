#include <iostream>

#include "birkhoff_cli/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = birkhoff::cli::parse_arguments(argc, argv, std::cout, std::cerr);
  if (const int* status = std::get_if<int>(&parsed)) return *status;
  return birkhoff::cli::run(std::get<birkhoff::cli::RunConfig>(parsed), std::cout, std::cerr);
}
