#include "ncqo/cli.hpp"

int main(int argc, char** argv) { return ncqo::cli::run(argc, argv); }
