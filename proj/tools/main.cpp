#include "kvertex/cli/cli.hpp"

int main(int argc, char** argv) { return kvertex::cli::main_entry(argc, argv); }
