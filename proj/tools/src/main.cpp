// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "freemoe/cli/run.hpp"

int main(int argc, char** argv) {
  return freemoe::cli::main_entry(argc, argv, std::cout, std::cerr);
}
