#include "cli.hpp"

int main(int argc, char** argv) { return elastica::cli::run(argc, argv); }
