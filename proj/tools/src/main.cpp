#include "radeig_cli/run.hpp"

int main(int argc, char** argv) { return radeig::cli::main_entry(argc, argv); }
