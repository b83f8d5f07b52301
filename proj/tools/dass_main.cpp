#include "dass/cli.hpp"

int main(int argc, char** argv) { return dass::cli_main(argc, argv); }
