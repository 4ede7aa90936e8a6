#include "snowcone/cli.hpp"

int main(int argc, char** argv) { return snowcone::run_cli(argc, argv); }
