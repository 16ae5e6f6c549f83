#include "vpt/cli.hpp"

int main(int argc, char** argv) { return vpt::cli::run_cli(argc, argv); }
