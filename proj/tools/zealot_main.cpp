#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "zealot/cli.hpp"

int main(int argc, char** argv) {
  const bool color = std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO);
  std::vector<std::string> args(argv + 1, argv + argc);
  return zealot::cli::run_command(std::move(args), std::cout, std::cerr, color);
}
