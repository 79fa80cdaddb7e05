#pragma once

#include <functional>
#include <vector>

#include "ghc/mobius.hpp"

namespace ghc {

struct GaussInt {
  long long re = 0;
  long long im = 0;

  long long norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const { return norm() == 1; }
  // Representative half: im > 0, or im == 0 and re > 0.
  bool upper_half() const { return im > 0 || (im == 0 && re > 0); }
  Complex value() const { return {double(re), double(im)}; }

  friend GaussInt operator+(GaussInt x, GaussInt y) { return {x.re + y.re, x.im + y.im}; }
  friend GaussInt operator-(GaussInt x, GaussInt y) { return {x.re - y.re, x.im - y.im}; }
  friend GaussInt operator-(GaussInt x) { return {-x.re, -x.im}; }
  friend GaussInt operator*(GaussInt x, GaussInt y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(GaussInt x, GaussInt y) { return x.re == y.re && x.im == y.im; }
  GaussInt conj() const { return {re, -im}; }
};

struct GaussMatrix {
  GaussInt a, b, c, d;
  GaussInt det() const { return a * d - b * c; }
  Moebius element() const;
};

enum class LatticeTag { PicardGroup };

struct LatticePreset {
  LatticeTag tag = LatticeTag::PicardGroup;
  double cap = 40;
  double known_exponent = 2.0;
};

// Every PSL2(Z[i]) element with max entry modulus <= norm_bound, one sign per
// pair. Deterministic order, grouped by the entry a.
void enumerate_lattice_elements(const LatticePreset& preset, double norm_bound,
                                const std::function<void(const GaussMatrix&)>& visit);
std::vector<GaussMatrix> lattice_elements(const LatticePreset& preset, double norm_bound);

}  // namespace ghc
