#include "reinhardt/cli.hpp"

int main(int argc, char** argv) { return reinhardt::cli::run_cli(argc, argv); }
