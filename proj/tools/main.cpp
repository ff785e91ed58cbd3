#include "cli.hpp"

int main(int argc, char** argv) { return cbc::cli::run(argc, argv); }
