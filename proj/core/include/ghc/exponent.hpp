#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghc/lattice.hpp"
#include "ghc/marking.hpp"

namespace ghc {

// Sorted orbit displacements d(o, gamma o); complete for d <= reach.
struct OrbitTable {
  std::vector<double> distances;
  double reach = 0;
};

OrbitTable orbit_table(const CertifiedMarking& cm, double R, int threads = 0);
// Uses the entry bound |entries|^2 <= 2 cosh R, which contains the whole ball.
OrbitTable lattice_orbit_table(const LatticePreset& preset, double R);

// Sum of exp(-s d) over the table, compensated.
double poincare_partial(const OrbitTable& table, double s);

enum class DeltaMethod { OrbitalFit, PoincareBisection };

struct DeltaEstimate {
  double delta = 0;
  DeltaMethod method = DeltaMethod::OrbitalFit;
  double ci_lo = 0;
  double ci_hi = 0;
  double R = 0;
  std::size_t points = 0;
};

inline constexpr std::size_t kMinOrbitPoints = 500;

// Throws InsufficientData below kMinOrbitPoints.
DeltaEstimate estimate_delta(const OrbitTable& table, DeltaMethod method);

struct GatedDelta {
  DeltaEstimate fit;
  DeltaEstimate bisection;
  double value() const { return fit.delta; }
  double gap() const;
};
inline constexpr double kDeltaGate = 0.05;
// OrbitalFit value, aborted with NumericalInstability when the two methods
// disagree by more than gate.
GatedDelta gated_delta(const OrbitTable& table, double gate = kDeltaGate);

std::string method_name(DeltaMethod m);

// Logarithmic integral from 2 to x.
double li(double x);

}  // namespace ghc
