#include "ncdiff/cli.hpp"

int main(int argc, char** argv) { return ncdiff::run_cli(argc, argv); }
