#include "icas/cli/commands.hpp"

int main(int argc, char** argv) { return icas::cli::run(argc, argv); }
