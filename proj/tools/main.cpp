#include <string>
#include <vector>

#include "rascal_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rascal::cli::cli_main(args);
}
