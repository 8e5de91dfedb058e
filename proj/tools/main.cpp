#include <string>
#include <vector>

#include "sievelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sievelab::cli::dispatch(args);
}
