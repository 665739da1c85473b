#include <iostream>
#include <string>
#include <vector>

#include "logchisq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return logchisq::cli::run(args, std::cout, std::cerr);
}
