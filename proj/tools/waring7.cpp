#include "waring7/cli.hpp"

int main(int argc, char** argv) { return waring7::cli_main(argc, argv); }
