// SPDX-License-Identifier: MIT
#include "mfk/cli.hpp"

int main(int argc, char** argv) { return mfk::cli_main(argc, argv); }
