#include "croof/cli.hpp"

int main(int argc, char** argv) { return croof::cli::run_main(argc, argv); }
