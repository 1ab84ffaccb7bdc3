#include "pwilab/cli.hpp"

int main(int argc, char** argv) { return pwilab::cli::run_command(argc, argv); }
