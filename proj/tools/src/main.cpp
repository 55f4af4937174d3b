#include <iostream>
#include <string>
#include <vector>

#include "geodisc/app/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return geodisc::app::run_cli(args, std::cout, std::cerr);
}
