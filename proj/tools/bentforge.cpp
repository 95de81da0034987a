#include "bentforge/cli.hpp"

int main(int argc, char** argv) { return bentforge::cli::run(argc, argv); }
