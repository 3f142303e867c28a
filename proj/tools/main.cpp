#include "ideaforge/cli.hpp"

int main(int argc, char** argv) { return ideaforge::cli_dispatch(argc, argv); }
