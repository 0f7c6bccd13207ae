#include "entvae/cli.hpp"

int main(int argc, char** argv) { return entvae::cli::run_cli(argc, argv); }
