// SPDX-License-Identifier: Apache-2.0
#include "owcrs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return owcrs::cli_main(argc, argv, std::cout, std::cerr); }
