#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char ** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return rsmlkit::cli::run(args, std::cout, std::cerr, isatty(STDERR_FILENO) != 0);
}
