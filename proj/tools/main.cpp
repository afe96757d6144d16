#include "exo/cli.hpp"

int main(int argc, char** argv) { return exo::cli::dispatch(argc, argv); }
