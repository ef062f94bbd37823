#include <cstdio>
#include <string>
#include <vector>

#include "dircut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  dircut::CliResult result = dircut::run_cli(args);
  std::fputs(result.output.c_str(), stdout);
  return result.exit_code;
}
