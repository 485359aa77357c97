#include "cli.hpp"

int main(int argc, char** argv) { return penrisk::cli::run_cli(argc, argv); }
