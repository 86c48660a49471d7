#include <iostream>

#include "rfl/cli.hpp"

int main(int argc, char** argv) {
  return rfl::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
