#include "padic_cli.hpp"

int main(int argc, char** argv) { return padic::cli::run(argc, argv); }
