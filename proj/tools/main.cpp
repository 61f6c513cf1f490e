#include "cli.hpp"

int main(int argc, char** argv) { return sublin::cli::run(argc, argv); }
