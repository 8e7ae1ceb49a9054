#include "opalg/cli.hpp"

int main(int argc, char** argv) { return opalg::cli::run(argc, argv); }
