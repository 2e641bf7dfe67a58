#include "s2kit/commands.hpp"

int main(int argc, char** argv) { return s2kit::run_cli(argc, argv); }
