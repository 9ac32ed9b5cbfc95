#include "kgp/cli.hpp"

int main(int argc, char** argv) { return kgp::cli::main(argc, argv); }
