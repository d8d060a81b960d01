#include "symqnn/cli.hpp"

int main(int argc, char** argv) { return symqnn::run_cli(argc, argv); }
