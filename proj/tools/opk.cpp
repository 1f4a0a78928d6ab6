#include "opk/cli/cli.hpp"

int main(int argc, char** argv) { return opk::cli::main_entry(argc, argv); }
