#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ghc/mobius.hpp"
#include "ghc/sphere.hpp"

namespace ghc {

// Letters are generator indices with orientation: 2i is g_i, 2i+1 is g_i^-1.
using Letter = std::uint8_t;
inline Letter inverse_letter(Letter s) { return static_cast<Letter>(s ^ 1u); }

struct SchottkyMarking {
  std::string name;
  std::vector<Moebius> generators;
  std::vector<GeneralizedDisk> disks;
  // For generator i: (repelling disk index, attracting disk index); g_i maps
  // the exterior of the repelling disk into the attracting disk.
  std::vector<std::pair<int, int>> pairing;

  int rank() const { return static_cast<int>(generators.size()); }
  int alphabet() const { return 2 * rank(); }
  Moebius letter(Letter s) const;
  Mat2 letter_matrix(Letter s) const;
  // Disk containing the image of everything outside the inverse letter's disk.
  const GeneralizedDisk& letter_disk(Letter s) const;
};

struct Certificate {
  double min_margin = 0;                      // smallest pairwise disk gap
  std::vector<double> inclusion_gaps;         // per generator, ping-pong image gap
  std::vector<double> contraction;            // per generator, kappa_i < 1
  std::vector<std::vector<double>> nesting;   // plane separation between letter s and s(s')
  SpacePoint anchor;                          // point outside every letter half-space
  double anchor_offset = 0;                   // d(o, anchor)
  bool zariski_heuristic = false;             // heuristic only, see README
};

struct Violation {
  std::string kind;
  int first = -1;
  int second = -1;
  double value = 0;
  std::string message;
};

std::variant<Certificate, Violation> verify_schottky(const SchottkyMarking& m);

struct CertifiedMarking {
  SchottkyMarking marking;
  Certificate certificate;
};

// Throws NotCertified with the violation message.
CertifiedMarking certify(const SchottkyMarking& m);

// L(n): every cyclically reduced word of length n has translation length >= L(n).
double displacement_lower_bound(const CertifiedMarking& cm, int n);
// L(1..nmax), index 0 unused.
std::vector<double> length_bounds(const CertifiedMarking& cm, int nmax);
// Smallest n with L(n) > T, or -1 when beyond max_len.
int word_length_bound(const CertifiedMarking& cm, double T, int max_len);

// Half the minimal group displacement of g0 over nontrivial words of length <= n0.
double injectivity_radius_bound(const SchottkyMarking& m, const Moebius& g0, int n0 = 6);

// Product of letters left to right with a determinant renormalization after
// every eighth multiplication.
Mat2 evaluate(const SchottkyMarking& m, const std::vector<Letter>& word);
inline constexpr int kRenormalizeEvery = 8;
Mat2 renormalize(const Mat2& m);

SchottkyMarking fixture_s2();
SchottkyMarking fixture_single();
SchottkyMarking fixture_fuchsian();
SchottkyMarking conjugated(const SchottkyMarking& m, const Moebius& g);

SchottkyMarking marking_from_json(const std::string& text);
std::string marking_to_json(const SchottkyMarking& m);
SchottkyMarking load_marking(const std::string& path);
std::string violation_to_json(const Violation& v);
std::string marking_hash(const SchottkyMarking& m);

std::uint64_t fnv1a(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace ghc
