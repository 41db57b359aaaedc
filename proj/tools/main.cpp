#include "fracsteady/clirun.hpp"

int main(int argc, char** argv) { return fracsteady::run_cli(argc, argv); }
