#include "kostant/cli.hpp"

int main(int argc, char** argv) { return kostant::cli::run(argc, argv); }
