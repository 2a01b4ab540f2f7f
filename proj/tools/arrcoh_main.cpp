#include "arrcoh/cli.hpp"

int main(int argc, char** argv) { return arrcoh::cli::main_entry(argc, argv); }
