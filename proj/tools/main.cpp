#include "cylinders/cli.hpp"

int main(int argc, char** argv) { return cylinders::run_cli(argc, argv); }
