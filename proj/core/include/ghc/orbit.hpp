#pragma once

#include <vector>

#include "ghc/marking.hpp"
#include "ghc/words.hpp"

namespace ghc {

struct OrbitElement {
  Word word;  // freely reduced
  Mat2 matrix;
  double distance = 0;  // d(base, gamma base)
};

struct BallOptions {
  int max_depth = 64;
  int threads = 0;
  bool keep_words = true;
};

// Upper half-space map sending o to p.
Mat2 frame_at(const SpacePoint& p);

// Every group element gamma with d(base, gamma base) <= R, identity included.
// Completeness comes from the nested ping-pong half-spaces: a reduced word w
// moves the reference point into the half-space bounded by its last plane, so
// a subtree is skipped once that plane is farther than R. Sorted by distance,
// ties by word.
std::vector<OrbitElement> enumerate_ball(const CertifiedMarking& cm, const SpacePoint& base, double R,
                                         const BallOptions& opts = {});

}  // namespace ghc
