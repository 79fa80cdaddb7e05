#pragma once

#include <cmath>
#include <random>

#include "ghc/census.hpp"
#include "ghc/marking.hpp"
#include "ghc/mobius.hpp"

namespace ghc::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

// A random SL2(C) element with entries of modest size.
inline Moebius random_element(double spread = 1.5) {
  for (;;) {
    Complex a = random_complex(spread), b = random_complex(spread), c = random_complex(spread);
    if (std::abs(a) < 0.2) continue;
    Complex d = (1.0 + b * c) / a;
    return Moebius::from_unimodular({a, b, c, d});
  }
}

inline const CertifiedMarking& s2() {
  static const CertifiedMarking cm = certify(fixture_s2());
  return cm;
}

// Brute-force census: every cyclically reduced word up to max_len, conjugacy by
// comparing all rotations, primitivity by trial division of the period.
struct NaiveClass {
  Word necklace;
  double length;
  double holonomy;
};

inline bool is_proper_power(const Word& w) {
  std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return true;
  }
  return false;
}

inline std::vector<NaiveClass> naive_census(const SchottkyMarking& m, double T, int max_len) {
  std::vector<NaiveClass> out;
  int k = m.alphabet();
  std::vector<Word> seen;
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int s = 0; s < k; ++s) {
        if (!w.empty() && s == inverse_letter(w.back())) continue;
        Word v = w;
        v.push_back(static_cast<Letter>(s));
        next.push_back(v);
      }
    frontier = std::move(next);
    for (const Word& w : frontier) {
      if (w.back() == inverse_letter(w.front())) continue;
      if (is_proper_power(w)) continue;
      Word best = w;
      for (std::size_t r = 1; r < w.size(); ++r) {
        Word rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        best = std::min(best, rot);
      }
      if (best != w) continue;
      Mat2 g = Mat2{};
      for (Letter s : w) g = g * m.letter_matrix(s);
      Complex tr = g.trace();
      Complex root = std::sqrt(tr * tr - 4.0);
      Complex lam = (tr + root) / 2.0;
      if (std::abs(lam) < 1) lam = (tr - root) / 2.0;
      double length = 2 * std::log(std::abs(lam));
      double theta = std::fmod(std::arg(lam) + 2 * M_PI, M_PI);
      if (length <= T) out.push_back({w, length, theta});
    }
  }
  return out;
}

}  // namespace ghc::test
