#include <vector>
#include <string>

#include "spanner/cli_commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spanner::run_cli(args);
}
