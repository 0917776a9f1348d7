#include "thomforge/cli.hpp"

int main(int argc, char** argv) { return thomforge::cli::run(argc, argv); }
