#include <iostream>
#include <string>
#include <vector>

#include "hosb/cli.hpp"

int main(int argc, char** argv) {
  return hosb::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
