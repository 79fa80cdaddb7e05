#pragma once

namespace ghc::cli {

// Exit codes: 0 ok, 1 a verification failed, 2 invalid marking, 3 other errors.
int run(int argc, char** argv);

}  // namespace ghc::cli
