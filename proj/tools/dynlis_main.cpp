#include <string>
#include <vector>

#include "dynlis/cli.hpp"

int main(int argc, char** argv) {
  return dynlis::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
