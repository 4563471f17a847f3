#include "floquet/commands.hpp"

int main(int argc, char** argv) { return floq::cli_main(argc, argv); }
