#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ghc/flowbox.hpp"
#include "ghc/marking.hpp"
#include "ghc/orbit.hpp"

namespace ghc {

struct Atom {
  SpherePoint point;
  double weight = 0;
};

// Discrete approximation of the conformal density seen from basepoint o.
struct PSMeasure {
  std::vector<Atom> atoms;
  double exponent = 0;
  SpacePoint basepoint = kOrigin;
  double R = 0;
};

inline constexpr double kShellWidth = 4.0;
inline constexpr double kExponentWindow = 0.1;

// Atoms at the radial projections of the orbit points in (R - 4, R], weighted
// by exp(-s d). When delta_hat is given, s must be within 0.1 of it.
PSMeasure patterson_sample(const CertifiedMarking& cm, double R, double s,
                           std::optional<double> delta_hat = std::nullopt, int threads = 0);
// Same, from an orbit ball around o that already reaches R.
PSMeasure patterson_from_ball(const std::vector<OrbitElement>& ball, double R, double s);

// e^{-<a, b>_o}: half the chordal distance of the directions in the ball model.
double visual_distance(const SpherePoint& a, const SpherePoint& b);

inline constexpr double kBoundaryBand = 1e-9;
double measure_of_disk(const PSMeasure& nu, const GeneralizedDisk& d);
// nu_x(D) = sum over atoms in D of w (P(x, xi) / P(o, xi))^s; not renormalized.
double measure_at(const PSMeasure& nu, const SpacePoint& x, const GeneralizedDisk& d);

// 2 eps nu_{g0 o}(forward set) nu_{g0 o}(backward set) Vol(omega); no O(eps)
// distortion correction.
double bms_box_mass(const PSMeasure& nu, const FlowBox& box, const Sector& omega);

struct ConformalityDefect {
  int generator = 0;
  int disk = 0;
  double image_mass = 0;   // nu(g D)
  double pulled_mass = 0;  // sum over D of w |g'|^s
  double relative() const;
};
// Every (generator, disk) pair where g D lies inside a Schottky disk.
std::vector<ConformalityDefect> conformality_defects(const PSMeasure& nu, const SchottkyMarking& m);

// CSV with columns re,im,weight.
void write_measure_csv(std::ostream& out, const PSMeasure& nu);

}  // namespace ghc
