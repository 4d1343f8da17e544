#include "pst/cli.hpp"

int main(int argc, char** argv) { return pst::run_cli(argc, argv); }
