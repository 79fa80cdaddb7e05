#pragma once

#include <array>
#include <complex>
#include <optional>

namespace ghc {

using Complex = std::complex<double>;

// Raw 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  Complex a{1}, b{0}, c{0}, d{1};

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  double frobenius2() const { return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

// Inverse of a determinant-one matrix.
inline Mat2 unimodular_inverse(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

// A point of the Riemann sphere.
struct SpherePoint {
  Complex z{0};
  bool infinite = false;

  static SpherePoint infinity() { return {Complex{0}, true}; }
  static SpherePoint at(Complex w) { return {w, false}; }
};

// Element of PSL2(C): determinant one, canonical sign.
class Moebius {
 public:
  Moebius() = default;

  static Moebius identity() { return {}; }
  // Trusts the caller that m has determinant one; only the sign is canonicalized.
  static Moebius from_unimodular(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  Complex a() const { return m_.a; }
  Complex b() const { return m_.b; }
  Complex c() const { return m_.c; }
  Complex d() const { return m_.d; }
  Complex trace() const { return m_.trace(); }

  Moebius inverse() const;
  friend Moebius operator*(const Moebius& x, const Moebius& y) {
    return from_unimodular(x.m_ * y.m_);
  }

 private:
  Mat2 m_;
};

Moebius normalize_psl(const Mat2& m);

// Entrywise sup distance between two PSL elements (minimized over the sign).
double psl_entry_distance(const Moebius& g, const Moebius& h);

Moebius translation(Complex x);        // n+(x): z -> z + x, fixes infinity
Moebius lower_unipotent(Complex z);    // n-(z): fixes 0
Moebius diagonal(Complex mu);          // diag(mu, 1/mu)
Moebius a_t(double t);                 // diag(e^{t/2}, e^{-t/2})
Moebius m_theta(double theta);         // diag(e^{i theta}, e^{-i theta})
Moebius a_m(double t, double theta);   // a_t m_theta

enum class ClassTag { Identity, Elliptic, Parabolic, Hyperbolic };

struct HyperbolicData {
  Complex lambda;   // |lambda| > 1, Arg in [0, pi)
  double length = 0;
  double holonomy = 0;  // in [0, pi)
  SpherePoint attracting;
  SpherePoint repelling;
  Moebius conjugator;  // gamma = h a_length m_holonomy h^-1
};

struct ElementClass {
  ClassTag tag = ClassTag::Identity;
  bool unstable = false;  // |tr^2 - 4| below the classification tolerance
  std::optional<HyperbolicData> hyperbolic;
};

inline constexpr double kNearBoundaryTol = 1e-9;

ElementClass classify(const Moebius& g);
HyperbolicData hyperbolic_data(const Moebius& g);

// Length and holonomy from a trace alone (cheap path used by the census).
struct LengthHolonomy {
  Complex lambda;
  double length;
  double holonomy;
};
LengthHolonomy length_holonomy_from_trace(Complex trace);

enum class Orientation {
  UpperDiagLower,  // n+(x) a_t m_theta n-(z)
  LowerDiagUpper,  // n-(z) a_t m_theta n+(x)
};

struct BruhatCoords {
  Complex x;  // upper-triangular (n+) parameter
  Complex z;  // lower-triangular (n-) parameter
  double t = 0;
  double theta = 0;  // in [0, pi)
  Orientation orientation = Orientation::UpperDiagLower;
};

inline constexpr double kChartTol = 1e-12;

BruhatCoords bruhat(const Moebius& g, Orientation orientation);
Moebius recompose(const BruhatCoords& coords);

double group_distance(const Moebius& g, const Moebius& h);

SpherePoint boundary_action(const Moebius& g, const SpherePoint& xi);
SpherePoint boundary_action(const Mat2& g, const SpherePoint& xi);

}  // namespace ghc
