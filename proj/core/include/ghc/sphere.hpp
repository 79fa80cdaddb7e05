#pragma once

#include <limits>
#include <vector>

#include "ghc/mobius.hpp"

namespace ghc {

// Region {z : A|z|^2 + 2 Re(conj(B) z) + C < 0} of the Riemann sphere. Covers
// disks (A > 0), disk exteriors (A < 0) and half-planes (A = 0).
struct GeneralizedDisk {
  double A = 0;
  Complex B{0};
  double C = -1;  // default: the whole sphere
  // |B|^2 - AC when known exactly. It is invariant under Moebius images, and
  // recomputing it for tiny nested disks loses every significant digit.
  double disc = std::numeric_limits<double>::quiet_NaN();

  static GeneralizedDisk disk(Complex center, double radius);
  static GeneralizedDisk exterior(Complex center, double radius);
  // Open half-plane {z : Re(conj(normal) (z - point)) > 0}.
  static GeneralizedDisk half_plane(Complex point, Complex normal);
  static GeneralizedDisk whole_sphere() { return {}; }

  enum class Kind { Disk, Exterior, HalfPlane, Degenerate };
  Kind kind() const;
  Complex center() const;  // Disk / Exterior only
  double radius() const;   // Disk / Exterior only
  // For half-planes: unit inward normal and a boundary point.
  Complex normal() const;
  Complex boundary_point() const;

  GeneralizedDisk complement() const { return {-A, -B, -C, disc}; }
  double discriminant() const;
  GeneralizedDisk normalized() const;

  double form(Complex z) const { return A * std::norm(z) + 2.0 * (std::conj(B) * z).real() + C; }
  // Signed Euclidean-like distance to the boundary circle (negative inside).
  double signed_distance(const SpherePoint& p) const;
  bool contains(const SpherePoint& p) const;

  // Points on the boundary circle; n samples.
  std::vector<SpherePoint> boundary_samples(int n) const;
};

GeneralizedDisk image(const Moebius& g, const GeneralizedDisk& d);
GeneralizedDisk image(const Mat2& g, const GeneralizedDisk& d);

// Gap between two regions: positive when their closures are disjoint,
// -infinity when they cannot be disjoint.
double separation(const GeneralizedDisk& p, const GeneralizedDisk& q);
// Gap by which closure(inner) sits inside outer.
inline double inclusion_gap(const GeneralizedDisk& inner, const GeneralizedDisk& outer) {
  return separation(inner, outer.complement());
}

// Hyperbolic distance between the planes over two disjoint or nested circles.
double plane_distance(const GeneralizedDisk& p, const GeneralizedDisk& q);

// Point (z, h) of upper half-space; o = (0, 1).
struct SpacePoint {
  Complex z{0};
  double h = 1;
};

inline constexpr SpacePoint kOrigin{Complex{0}, 1.0};

SpacePoint act(const Mat2& g, const SpacePoint& p);
double space_distance(const SpacePoint& p, const SpacePoint& q);
// d(o, g o), stable near the identity.
double origin_displacement(const Mat2& g);

// Signed quantity whose sign tells the side of the plane over the circle of d
// (negative: inside the half-space above the region).
double plane_side(const GeneralizedDisk& d, const SpacePoint& p);
double distance_to_plane(const GeneralizedDisk& d, const SpacePoint& p);

// Ball model with o at the centre.
struct Vec3 {
  double x = 0, y = 0, z = 0;
};
Vec3 to_ball(const SpacePoint& p);
Vec3 sphere_direction(const SpherePoint& p);
SpherePoint from_direction(const Vec3& u);
// Endpoint of the ray from o through p; p must differ from o.
SpherePoint radial_projection(const SpacePoint& p);

// Poisson kernel ratio P(x, xi) / P(o, xi) = exp(Busemann_xi(o, x)).
double poisson_ratio(const SpacePoint& x, const SpherePoint& xi);

}  // namespace ghc
