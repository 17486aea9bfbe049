#include "cli.hpp"

int main(int argc, char** argv) { return polyreg::cli::run(argc, argv); }
