#include "logsyn/cli.hpp"

int main(int argc, char** argv) { return logsyn::cli::run_main(argc, argv); }
