#include "ghc/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghc/error.hpp"
#include "ghc/parallel.hpp"

namespace ghc {

Mat2 frame_at(const SpacePoint& p) {
  double s = std::sqrt(p.h);
  return {s, p.z / s, 0, 1.0 / s};
}

namespace {

struct BallWalker {
  const SchottkyMarking& m;
  SpacePoint ref;
  double penalty;
  Mat2 frame, frame_inv;
  double R;
  BallOptions opts;
  std::vector<OrbitElement>* out;

  bool prunable(const Mat2& prefix, Letter s) const {
    GeneralizedDisk plane = image(prefix, m.letter_disk(s));
    if (plane_side(plane, ref) <= 0) return false;
    return distance_to_plane(plane, ref) - penalty > R;
  }

  void visit(Word& word, const Mat2& w) {
    double d = origin_displacement(frame_inv * w * frame);
    if (d <= R) out->push_back({opts.keep_words ? word : Word{}, w, d});
    int depth = static_cast<int>(word.size());
    for (Letter s = 0; s < m.alphabet(); ++s) {
      if (s == inverse_letter(word.back())) continue;
      if (prunable(w, s)) continue;
      if (depth + 1 > opts.max_depth)
        throw Error(ErrorCode::ReachExceeded, "orbit ball needs words beyond the depth cap");
      Mat2 next = w * m.letter_matrix(s);
      if ((depth + 1) % kRenormalizeEvery == 0) next = renormalize(next);
      word.push_back(s);
      visit(word, next);
      word.pop_back();
    }
  }
};

}  // namespace

std::vector<OrbitElement> enumerate_ball(const CertifiedMarking& cm, const SpacePoint& base, double R,
                                         const BallOptions& opts) {
  const SchottkyMarking& m = cm.marking;
  bool base_outside = true;
  for (Letter s = 0; s < m.alphabet(); ++s)
    if (plane_side(m.letter_disk(s), base) <= 0) base_outside = false;
  SpacePoint ref = base_outside ? base : cm.certificate.anchor;
  double penalty = base_outside ? 0.0 : 2.0 * space_distance(cm.certificate.anchor, base);
  Mat2 frame = frame_at(base);
  Mat2 frame_inv = unimodular_inverse(frame);

  // Work items: single letters (node only) and two-letter subtrees.
  struct Item {
    Letter first;
    int second;  // -1: the one-letter node itself
  };
  std::vector<Item> items;
  for (Letter s = 0; s < m.alphabet(); ++s) {
    items.push_back({s, -1});
    for (Letter t = 0; t < m.alphabet(); ++t)
      if (t != inverse_letter(s)) items.push_back({s, t});
  }
  std::vector<std::vector<OrbitElement>> parts(items.size());
  BallWalker proto{m, ref, penalty, frame, frame_inv, R, opts, nullptr};
  Mat2 identity;
  parallel_for(items.size(), thread_budget(opts.threads), [&](std::size_t i) {
    BallWalker walker = proto;
    walker.out = &parts[i];
    const Item& it = items[i];
    if (walker.prunable(identity, it.first)) return;
    Mat2 w1 = m.letter_matrix(it.first);
    Word word{it.first};
    if (it.second < 0) {
      double d = origin_displacement(frame_inv * w1 * frame);
      if (d <= R) parts[i].push_back({opts.keep_words ? word : Word{}, w1, d});
      return;
    }
    Letter t = static_cast<Letter>(it.second);
    if (walker.prunable(w1, t)) return;
    if (opts.max_depth < 2) throw Error(ErrorCode::ReachExceeded, "orbit ball needs words beyond the depth cap");
    word.push_back(t);
    walker.visit(word, w1 * m.letter_matrix(t));
  });

  std::vector<OrbitElement> out;
  out.push_back({Word{}, Mat2{}, 0.0});
  for (auto& p : parts)
    for (auto& e : p) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), [](const OrbitElement& x, const OrbitElement& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return x.word < y.word;
  });
  return out;
}

}  // namespace ghc
