#include "cli.hpp"

int main(int argc, char** argv) { return leoisl::cli_main(argc, argv); }
