#include "pluri/cli.hpp"

int main(int argc, char** argv) { return pluri::cli::run(argc, argv); }
