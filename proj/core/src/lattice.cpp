#include "ghc/lattice.hpp"

#include <cmath>

#include "ghc/error.hpp"

namespace ghc {

namespace {

// Nearest-integer division in Z[i].
GaussInt round_div(GaussInt x, GaussInt y) {
  GaussInt num = x * y.conj();
  long long n = y.norm();
  auto rnd = [n](long long v) {
    long double q = static_cast<long double>(v) / n;
    return static_cast<long long>(std::floor(q + 0.5L));
  };
  return {rnd(num.re), rnd(num.im)};
}

// Returns g and (x, y) with a x + c y = g = gcd(a, c).
GaussInt extended_gcd(GaussInt a, GaussInt c, GaussInt& x, GaussInt& y) {
  GaussInt r0 = a, r1 = c, x0{1, 0}, x1{0, 0}, y0{0, 0}, y1{1, 0};
  while (!r1.is_zero()) {
    GaussInt q = round_div(r0, r1);
    GaussInt r2 = r0 - q * r1;
    GaussInt x2 = x0 - q * x1;
    GaussInt y2 = y0 - q * y1;
    r0 = r1, r1 = r2, x0 = x1, x1 = x2, y0 = y1, y1 = y2;
  }
  x = x0;
  y = y0;
  return r0;
}

std::vector<GaussInt> ball(long long bound, double norm_bound) {
  std::vector<GaussInt> out;
  double limit = norm_bound * norm_bound + 1e-9;
  for (long long re = -bound; re <= bound; ++re)
    for (long long im = -bound; im <= bound; ++im)
      if (double(re * re + im * im) <= limit) out.push_back({re, im});
  return out;
}

}  // namespace

Moebius GaussMatrix::element() const {
  return Moebius::from_unimodular({a.value(), b.value(), c.value(), d.value()});
}

void enumerate_lattice_elements(const LatticePreset& preset, double norm_bound,
                                const std::function<void(const GaussMatrix&)>& visit) {
  if (norm_bound > preset.cap) throw Error(ErrorCode::CapExceeded, "norm bound above configured cap");
  if (norm_bound < 1) return;
  long long bound = static_cast<long long>(std::floor(norm_bound));
  double limit = norm_bound * norm_bound + 1e-9;
  auto fits = [limit](GaussInt v) { return double(v.norm()) <= limit; };
  std::vector<GaussInt> entries = ball(bound, norm_bound);

  for (GaussInt a : entries) {
    for (GaussInt c : entries) {
      if (a.is_zero()) {
        if (!c.is_unit()) continue;
        GaussInt b = -c.conj();  // -c^{-1}
        if (!b.upper_half()) continue;
        for (GaussInt d : entries) visit({a, b, c, d});
        continue;
      }
      if (!a.upper_half()) continue;
      GaussInt x, y;
      GaussInt g = extended_gcd(a, c, x, y);
      if (!g.is_unit()) continue;
      GaussInt ginv = g.conj();
      GaussInt d0 = x * ginv;
      GaussInt b0 = -(y * ginv);
      // b = b0 + k a, d = d0 + k c; scan k over the smaller constraint disk.
      bool use_c = !c.is_zero() && c.norm() > a.norm();
      GaussInt base = use_c ? d0 : b0;
      GaussInt step = use_c ? c : a;
      Complex centre = -base.value() / step.value();
      double radius = norm_bound / std::sqrt(double(step.norm())) + 1e-9;
      long long re_lo = static_cast<long long>(std::ceil(centre.real() - radius));
      long long re_hi = static_cast<long long>(std::floor(centre.real() + radius));
      long long im_lo = static_cast<long long>(std::ceil(centre.imag() - radius));
      long long im_hi = static_cast<long long>(std::floor(centre.imag() + radius));
      for (long long kr = re_lo; kr <= re_hi; ++kr)
        for (long long ki = im_lo; ki <= im_hi; ++ki) {
          GaussInt k{kr, ki};
          GaussInt b = b0 + k * a;
          GaussInt d = d0 + k * c;
          if (fits(b) && fits(d)) visit({a, b, c, d});
        }
    }
  }
}

std::vector<GaussMatrix> lattice_elements(const LatticePreset& preset, double norm_bound) {
  std::vector<GaussMatrix> out;
  enumerate_lattice_elements(preset, norm_bound, [&](const GaussMatrix& m) { out.push_back(m); });
  return out;
}

}  // namespace ghc
