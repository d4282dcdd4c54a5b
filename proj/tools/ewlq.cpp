#include "ewl/cli.hpp"

int main(int argc, char** argv) { return ewl::cli::run_cli(argc, argv); }
