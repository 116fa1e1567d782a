#include <iostream>
#include <string>
#include <vector>

#include "n4ck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return n4ck::runCli(args, std::cout, std::cerr);
}
