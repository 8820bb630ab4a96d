#include <iostream>

#include "metaplectic/cli.hpp"

int main(int argc, char** argv) {
  return metaplectic::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
