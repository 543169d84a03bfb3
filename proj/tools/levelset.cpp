#include <iostream>
#include <string>
#include <vector>

#include "levelset/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return levelset::cli::run(args, std::cout, std::cerr);
}
