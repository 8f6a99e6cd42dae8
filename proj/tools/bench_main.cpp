#include "lrc/cli.hpp"

int main(int argc, char** argv) { return lrc::run_cli(argc, argv); }
