#include <iostream>

#include "kitaev_qfi/cli.hpp"

int main(int argc, char** argv) {
  return kitaev_qfi::cli::main_entry(argc, argv, std::cout, std::cerr);
}
