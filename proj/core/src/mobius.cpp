#include "ghc/mobius.hpp"

#include <cmath>
#include <numbers>

#include "ghc/error.hpp"

namespace ghc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NearBoundary: return "NearBoundary";
    case ErrorCode::OutsideChart: return "OutsideChart";
    case ErrorCode::NotInBox: return "NotInBox";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EmptyAfterReduction: return "EmptyAfterReduction";
    case ErrorCode::BoundUnreachable: return "BoundUnreachable";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::GridExceedsStore: return "GridExceedsStore";
    case ErrorCode::ReachExceeded: return "ReachExceeded";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::IncompleteStore: return "IncompleteStore";
    case ErrorCode::IncompleteEnumeration: return "IncompleteEnumeration";
    case ErrorCode::StoreFormat: return "StoreFormat";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

bool upper_half(Complex w) { return w.imag() > 0 || (w.imag() == 0 && w.real() > 0); }

double mod_pi(double angle) {
  double r = std::fmod(angle, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

Mat2 canonical_sign(const Mat2& m) {
  for (const Complex& e : {m.a, m.b, m.c, m.d}) {
    if (std::abs(e) > 1e-14) {
      if (upper_half(e)) return m;
      return {-m.a, -m.b, -m.c, -m.d};
    }
  }
  return m;
}

double frob(const Mat2& m) { return std::sqrt(m.frobenius2()); }

}  // namespace

Moebius Moebius::from_unimodular(const Mat2& m) {
  Moebius g;
  g.m_ = canonical_sign(m);
  return g;
}

Moebius Moebius::inverse() const { return from_unimodular(unimodular_inverse(m_)); }

Moebius normalize_psl(const Mat2& m) {
  Complex det = m.det();
  if (std::abs(det) <= 1e-14) throw Error(ErrorCode::SingularMatrix, "determinant vanishes");
  Complex s = std::sqrt(det);
  return Moebius::from_unimodular({m.a / s, m.b / s, m.c / s, m.d / s});
}

double psl_entry_distance(const Moebius& g, const Moebius& h) {
  const Mat2& x = g.matrix();
  const Mat2& y = h.matrix();
  auto sup = [&](double sign) {
    return std::max({std::abs(x.a - sign * y.a), std::abs(x.b - sign * y.b),
                     std::abs(x.c - sign * y.c), std::abs(x.d - sign * y.d)});
  };
  return std::min(sup(1.0), sup(-1.0));
}

Moebius translation(Complex x) { return Moebius::from_unimodular({1, x, 0, 1}); }
Moebius lower_unipotent(Complex z) { return Moebius::from_unimodular({1, 0, z, 1}); }
Moebius diagonal(Complex mu) { return Moebius::from_unimodular({mu, 0, 0, 1.0 / mu}); }
Moebius a_t(double t) { return diagonal(std::exp(t / 2)); }
Moebius m_theta(double theta) { return diagonal(std::polar(1.0, theta)); }
Moebius a_m(double t, double theta) { return diagonal(std::exp(Complex(t / 2, theta))); }

LengthHolonomy length_holonomy_from_trace(Complex tr) {
  Complex disc = std::sqrt(tr * tr - 4.0);
  if ((std::conj(tr) * disc).real() < 0) disc = -disc;
  Complex lambda = (tr + disc) / 2.0;
  if (!upper_half(lambda)) lambda = -lambda;
  double hol = std::arg(lambda);
  if (hol >= kPi || hol < 0) hol = mod_pi(hol);
  return {lambda, 2.0 * std::log(std::abs(lambda)), hol};
}

ElementClass classify(const Moebius& g) {
  ElementClass out;
  const Mat2& m = g.matrix();
  Complex tr = m.trace();
  Complex tr2 = tr * tr;
  out.unstable = std::abs(tr2 - 4.0) < kNearBoundaryTol;
  constexpr double tol = 1e-14;
  bool real_interval = std::abs(tr2.imag()) <= tol && tr2.real() >= -tol && tr2.real() <= 4.0 + tol;
  if (!real_interval) {
    out.tag = ClassTag::Hyperbolic;
    if (!out.unstable) out.hyperbolic = hyperbolic_data(g);
    return out;
  }
  bool at_four = std::abs(tr2 - 4.0) <= 1e-12;
  if (at_four) {
    bool scalar = std::abs(m.b) <= 1e-12 && std::abs(m.c) <= 1e-12 && std::abs(m.a - m.d) <= 1e-12;
    out.tag = scalar ? ClassTag::Identity : ClassTag::Parabolic;
  } else {
    out.tag = ClassTag::Elliptic;
  }
  return out;
}

HyperbolicData hyperbolic_data(const Moebius& g) {
  const Mat2& m = g.matrix();
  Complex tr = m.trace();
  Complex tr2 = tr * tr;
  if (std::abs(tr2 - 4.0) < kNearBoundaryTol)
    throw Error(ErrorCode::NearBoundary, "trace squared within tolerance of 4");
  if (std::abs(tr2.imag()) <= 1e-14 && tr2.real() >= -1e-14 && tr2.real() <= 4.0)
    throw Error(ErrorCode::NotHyperbolic, "element is not loxodromic");

  Complex disc = std::sqrt(tr2 - 4.0);
  if ((std::conj(tr) * disc).real() < 0) disc = -disc;
  Complex big = (tr + disc) / 2.0;
  Complex small = 1.0 / big;

  auto eigenvector = [&](Complex mu) -> std::array<Complex, 2> {
    std::array<Complex, 2> v{m.b, mu - m.a};
    std::array<Complex, 2> w{mu - m.d, m.c};
    if (std::norm(v[0]) + std::norm(v[1]) >= std::norm(w[0]) + std::norm(w[1])) return v;
    return w;
  };
  auto va = eigenvector(big);
  auto vr = eigenvector(small);
  Mat2 h{va[0], vr[0], va[1], vr[1]};
  Complex s = std::sqrt(h.det());
  h = {h.a / s, h.b / s, h.c / s, h.d / s};

  // Slide along the axis so h(o) is the foot of the perpendicular from o.
  double n1 = std::norm(h.a) + std::norm(h.c);
  double n2 = std::norm(h.b) + std::norm(h.d);
  double k = std::pow(n2 / n1, 0.25);
  h = {h.a * k, h.b / k, h.c * k, h.d / k};
  // Rotate so the dominant entry of the first column is real positive.
  Complex lead = std::abs(h.a) >= std::abs(h.c) ? h.a : h.c;
  Complex phase = std::abs(lead) > 0 ? std::conj(lead) / std::abs(lead) : Complex(1);
  h = {h.a * phase, h.b / phase, h.c * phase, h.d / phase};

  HyperbolicData out;
  LengthHolonomy lh = length_holonomy_from_trace(tr);
  out.lambda = lh.lambda;
  out.length = lh.length;
  out.holonomy = lh.holonomy;
  out.conjugator = Moebius::from_unimodular(h);
  out.attracting = boundary_action(h, SpherePoint::infinity());
  out.repelling = boundary_action(h, SpherePoint::at(0));
  return out;
}

BruhatCoords bruhat(const Moebius& g, Orientation orientation) {
  const Mat2& m = g.matrix();
  BruhatCoords out;
  out.orientation = orientation;
  Complex mu;
  if (orientation == Orientation::UpperDiagLower) {
    if (std::abs(m.d) <= kChartTol) throw Error(ErrorCode::OutsideChart, "d entry vanishes");
    mu = 1.0 / m.d;
    out.x = m.b / m.d;
    out.z = m.c / m.d;
  } else {
    if (std::abs(m.a) <= kChartTol) throw Error(ErrorCode::OutsideChart, "a entry vanishes");
    mu = m.a;
    out.x = m.b / m.a;
    out.z = m.c / m.a;
  }
  out.t = 2.0 * std::log(std::abs(mu));
  out.theta = mod_pi(std::arg(mu));
  return out;
}

Moebius recompose(const BruhatCoords& c) {
  Moebius mid = a_m(c.t, c.theta);
  if (c.orientation == Orientation::UpperDiagLower)
    return translation(c.x) * mid * lower_unipotent(c.z);
  return lower_unipotent(c.z) * mid * translation(c.x);
}

double group_distance(const Moebius& g, const Moebius& h) {
  Mat2 f = unimodular_inverse(g.matrix()) * h.matrix();
  Mat2 minus{f.a - 1.0, f.b, f.c, f.d - 1.0};
  Mat2 plus{f.a + 1.0, f.b, f.c, f.d + 1.0};
  return std::min(frob(minus), frob(plus));
}

SpherePoint boundary_action(const Mat2& g, const SpherePoint& xi) {
  if (xi.infinite) {
    if (g.c == Complex(0)) return SpherePoint::infinity();
    return SpherePoint::at(g.a / g.c);
  }
  Complex num = g.a * xi.z + g.b;
  Complex den = g.c * xi.z + g.d;
  if (den == Complex(0)) return SpherePoint::infinity();
  return SpherePoint::at(num / den);
}

SpherePoint boundary_action(const Moebius& g, const SpherePoint& xi) {
  return boundary_action(g.matrix(), xi);
}

}  // namespace ghc
