#include "gwac/cli.hpp"

int main(int argc, char** argv) { return gwac::run_cli(argc, argv); }
