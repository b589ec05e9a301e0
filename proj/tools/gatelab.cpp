#include "gatelab/cli.hpp"

int main(int argc, char** argv) { return gatelab::cli::run(argc, argv); }
