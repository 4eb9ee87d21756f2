#include "discflux/cli.hpp"

int main(int argc, char** argv) { return discflux::run_command(argc, argv); }
