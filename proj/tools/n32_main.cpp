#include "n32/cli.hpp"

int main(int argc, char** argv) { return n32::cli::run(argc, argv); }
