#include <iostream>

#include "udc/cli.hpp"

int main(int argc, char** argv) {
  return udc::run_cli(argc, argv, std::cout, std::cerr);
}
