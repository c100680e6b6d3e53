#include "qfh/cli.hpp"

int main(int argc, char** argv) { return qfh::run_cli(argc, argv); }
