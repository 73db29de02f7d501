// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "rzk/cli.h"

int main(int argc, char** argv) {
  return rzk::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
