#include <iostream>
#include <variant>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto parsed = vilenkin::cli::parse_args(argc, argv);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return vilenkin::cli::run(std::get<vilenkin::cli::RunConfig>(parsed), std::cout, std::cerr);
}
