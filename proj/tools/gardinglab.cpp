#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> config_path;
  if (const char* env = std::getenv("GARDINGLAB_CONFIG")) config_path = env;
  return gardinglab::cli::run_cli(args, std::cin, std::cout, std::cerr, config_path);
}
