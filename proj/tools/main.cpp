#include "corekg/cli.hpp"

int main(int argc, char** argv) { return corekg::run_cli(argc, argv); }
