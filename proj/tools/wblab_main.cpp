#include "wb/cli.hpp"

int main(int argc, char** argv) { return wb::cli::run(argc, argv); }
