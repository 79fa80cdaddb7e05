#include "ghc/sphere.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ghc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double discriminant(const GeneralizedDisk& d) { return d.discriminant(); }
}  // namespace

double GeneralizedDisk::discriminant() const { return std::isnan(disc) ? std::norm(B) - A * C : disc; }

GeneralizedDisk GeneralizedDisk::disk(Complex c, double r) { return {1.0, -c, std::norm(c) - r * r, r * r}; }

GeneralizedDisk GeneralizedDisk::exterior(Complex c, double r) { return disk(c, r).complement(); }

GeneralizedDisk GeneralizedDisk::half_plane(Complex point, Complex normal) {
  Complex n = normal / std::abs(normal);
  return {0.0, -n, 2.0 * (std::conj(n) * point).real(), 1.0};
}

GeneralizedDisk::Kind GeneralizedDisk::kind() const {
  double delta = discriminant();
  if (!(delta > 0)) return Kind::Degenerate;
  if (std::abs(A) < 1e-12 * std::sqrt(delta)) return Kind::HalfPlane;
  return A > 0 ? Kind::Disk : Kind::Exterior;
}

Complex GeneralizedDisk::center() const { return -B / A; }

double GeneralizedDisk::radius() const { return std::sqrt(discriminant()) / std::abs(A); }

Complex GeneralizedDisk::normal() const { return -B / std::abs(B); }

Complex GeneralizedDisk::boundary_point() const { return -C * B / (2.0 * std::norm(B)); }

GeneralizedDisk GeneralizedDisk::normalized() const {
  double s = 1.0;
  switch (kind()) {
    case Kind::Disk:
    case Kind::Exterior: s = std::abs(A); break;
    case Kind::HalfPlane: s = std::abs(B); break;
    case Kind::Degenerate: s = std::max({std::abs(A), std::abs(B), std::abs(C)}); break;
  }
  if (s == 0) return *this;
  return {A / s, B / s, C / s, discriminant() / (s * s)};
}

double GeneralizedDisk::signed_distance(const SpherePoint& p) const {
  double delta = discriminant();
  if (p.infinite) {
    if (kind() == Kind::HalfPlane) return 0.0;
    if (A > 0) return kInf;
    if (A < 0) return -kInf;
    return C < 0 ? -kInf : kInf;
  }
  if (!(delta > 0)) return form(p.z) < 0 ? -kInf : kInf;
  return form(p.z) / (2.0 * std::sqrt(delta));
}

bool GeneralizedDisk::contains(const SpherePoint& p) const { return signed_distance(p) < 0; }

std::vector<SpherePoint> GeneralizedDisk::boundary_samples(int n) const {
  std::vector<SpherePoint> out;
  out.reserve(n);
  Kind k = kind();
  if (k == Kind::Disk || k == Kind::Exterior) {
    Complex c = center();
    double r = radius();
    for (int i = 0; i < n; ++i) out.push_back(SpherePoint::at(c + std::polar(r, 2 * std::numbers::pi * i / n)));
  } else if (k == Kind::HalfPlane) {
    Complex p = boundary_point();
    Complex dir = Complex(0, 1) * normal();
    out.push_back(SpherePoint::infinity());
    for (int i = 1; i < n; ++i) {
      double s = std::tan(std::numbers::pi * (double(i) / n - 0.5));
      out.push_back(SpherePoint::at(p + s * dir));
    }
  }
  return out;
}

GeneralizedDisk image(const Mat2& g, const GeneralizedDisk& d) {
  // q'(w) = v* K* H K v with K = g^{-1}.
  Mat2 k = unimodular_inverse(g);
  Complex h11 = d.A, h12 = d.B, h21 = std::conj(d.B), h22 = d.C;
  // HK
  Complex m11 = h11 * k.a + h12 * k.c, m12 = h11 * k.b + h12 * k.d;
  Complex m21 = h21 * k.a + h22 * k.c, m22 = h21 * k.b + h22 * k.d;
  // K* (HK)
  Complex a11 = std::conj(k.a) * m11 + std::conj(k.c) * m21;
  Complex a12 = std::conj(k.a) * m12 + std::conj(k.c) * m22;
  Complex a22 = std::conj(k.b) * m12 + std::conj(k.d) * m22;
  return GeneralizedDisk{a11.real(), a12, a22.real(), discriminant(d)}.normalized();
}

GeneralizedDisk image(const Moebius& g, const GeneralizedDisk& d) { return image(g.matrix(), d); }

double separation(const GeneralizedDisk& p0, const GeneralizedDisk& q0) {
  using K = GeneralizedDisk::Kind;
  GeneralizedDisk p = p0.normalized();
  GeneralizedDisk q = q0.normalized();
  K kp = p.kind(), kq = q.kind();
  if (kp == K::Degenerate || kq == K::Degenerate) return -kInf;
  if (kq == K::Disk && kp != K::Disk) std::swap(p, q), std::swap(kp, kq);
  if (kp == K::Disk) {
    Complex c = p.center();
    double r = p.radius();
    switch (kq) {
      case K::Disk: return std::abs(c - q.center()) - r - q.radius();
      case K::Exterior: return q.radius() - std::abs(c - q.center()) - r;
      case K::HalfPlane: return -(std::conj(q.normal()) * (c - q.boundary_point())).real() - r;
      default: return -kInf;
    }
  }
  if (kp == K::HalfPlane && kq == K::HalfPlane) {
    Complex n1 = p.normal(), n2 = q.normal();
    if (std::abs(n1 + n2) > 1e-12) return -kInf;
    return (std::conj(n1) * (p.boundary_point() - q.boundary_point())).real();
  }
  return -kInf;
}

double plane_distance(const GeneralizedDisk& p0, const GeneralizedDisk& q0) {
  GeneralizedDisk p = p0.normalized(), q = q0.normalized();
  double num = p.A * q.C + q.A * p.C - 2.0 * (p.B * std::conj(q.B)).real();
  double inv = std::abs(num) / (2.0 * std::sqrt(discriminant(p) * discriminant(q)));
  return inv <= 1.0 ? 0.0 : std::acosh(inv);
}

SpacePoint act(const Mat2& g, const SpacePoint& p) {
  Complex cz_d = g.c * p.z + g.d;
  double n = std::norm(cz_d) + std::norm(g.c) * p.h * p.h;
  Complex z = ((g.a * p.z + g.b) * std::conj(cz_d) + g.a * std::conj(g.c) * p.h * p.h) / n;
  return {z, p.h / n};
}

double space_distance(const SpacePoint& p, const SpacePoint& q) {
  double chord = std::sqrt(std::norm(p.z - q.z) + (p.h - q.h) * (p.h - q.h));
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.h * q.h)));
}

double origin_displacement(const Mat2& g) {
  double s = std::norm(g.a - std::conj(g.d)) + std::norm(g.b + std::conj(g.c));
  return 2.0 * std::asinh(std::sqrt(s) / 2.0);
}

double plane_side(const GeneralizedDisk& d, const SpacePoint& p) {
  return d.A * (std::norm(p.z) + p.h * p.h) + 2.0 * (std::conj(d.B) * p.z).real() + d.C;
}

double distance_to_plane(const GeneralizedDisk& d, const SpacePoint& p) {
  return std::asinh(std::abs(plane_side(d, p)) / (2.0 * p.h * std::sqrt(discriminant(d))));
}

Vec3 to_ball(const SpacePoint& p) {
  double x = p.z.real(), y = p.z.imag(), z = p.h + 1.0;
  double n = x * x + y * y + z * z;
  return {2 * x / n, 2 * y / n, 2 * z / n - 1.0};
}

Vec3 sphere_direction(const SpherePoint& p) {
  if (p.infinite) return {0, 0, -1};
  double n = 1.0 + std::norm(p.z);
  return {2 * p.z.real() / n, 2 * p.z.imag() / n, (1.0 - std::norm(p.z)) / n};
}

SpherePoint from_direction(const Vec3& u) {
  double den = 1.0 + u.z;
  if (den <= 0) return SpherePoint::infinity();
  return SpherePoint::at(Complex(u.x, u.y) / den);
}

SpherePoint radial_projection(const SpacePoint& p) {
  Vec3 v = to_ball(p);
  double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  return from_direction({v.x / n, v.y / n, v.z / n});
}

double poisson_ratio(const SpacePoint& x, const SpherePoint& xi) {
  if (xi.infinite) return x.h;
  return x.h * (std::norm(xi.z) + 1.0) / (std::norm(x.z - xi.z) + x.h * x.h);
}

}  // namespace ghc
