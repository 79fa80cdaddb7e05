#include "commands.hpp"

int main(int argc, char** argv) { return ghc::cli::run(argc, argv); }
