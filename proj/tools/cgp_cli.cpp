#include "cgp/cli.hpp"

int main(int argc, char** argv) { return cgp::cli::main_entry(argc, argv); }
