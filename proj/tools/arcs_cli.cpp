#include "arcs/harness/cli.hpp"

int main(int argc, char** argv) { return arcs::harness::run_cli(argc, argv); }
