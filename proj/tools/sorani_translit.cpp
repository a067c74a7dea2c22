#include <ios>
#include <iostream>

#include "sorani/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return sorani::cli::main(argc, argv);
}
