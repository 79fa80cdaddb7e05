#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>

#include "ghc/error.hpp"
#include "ghc/exponent.hpp"
#include "support.hpp"

using namespace ghc;
using ghc::test::s2;

namespace {

double li_oracle(double x) { return boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0)); }

OrbitTable single_point() { return {{0.0}, 5.0}; }

}  // namespace

TEST(Li, Examples) {
  EXPECT_NEAR(li(2), 0, 1e-15);
  EXPECT_NEAR(li(100), 29.0810, 1e-4);
  EXPECT_NEAR(li(100), li_oracle(100), 1e-10);
  EXPECT_THROW(li(1.5), Error);
}

TEST(Li, AgreesWithExponentialIntegral) {
  for (double x : {2.5, 10.0, 1e3, 1e5, 1e8, 1e12})
    EXPECT_NEAR(li(x) / li_oracle(x), 1.0, 1e-11) << x;
}

TEST(Li, Asymptotics) {
  double x = 1e8, L = std::log(x);
  double ratio = li(x) * L / x;
  EXPECT_NEAR(ratio, 1 + 1 / L + 2 / (L * L) + 6 / (L * L * L), 5e-4);
  EXPECT_LT(std::abs(li(1e12) * std::log(1e12) / 1e12 - 1), std::abs(ratio - 1));
}

TEST(Poincare, SmallTables) {
  EXPECT_NEAR(poincare_partial(single_point(), 0.7), 1.0, 1e-15);
  OrbitTable t = orbit_table(s2(), 12);
  EXPECT_NEAR(poincare_partial(t, 200.0), 1.0, 1e-12);
  EXPECT_NEAR(poincare_partial(t, 0.0), double(t.distances.size()), 1e-9);
}

TEST(Poincare, DecreasingAndLogConvex) {
  OrbitTable t = orbit_table(s2(), 16);
  double prev = 1e300;
  std::vector<double> logs;
  for (double s = 0; s <= 3.0; s += 0.1) {
    double v = poincare_partial(t, s);
    EXPECT_LT(v, prev);
    prev = v;
    logs.push_back(std::log(v));
  }
  for (std::size_t i = 1; i + 1 < logs.size(); ++i) EXPECT_GE(logs[i - 1] + logs[i + 1] - 2 * logs[i], -1e-12);
}

TEST(OrbitTable, SortedAndComplete) {
  OrbitTable t = orbit_table(s2(), 14);
  EXPECT_TRUE(std::is_sorted(t.distances.begin(), t.distances.end()));
  EXPECT_EQ(t.distances.front(), 0.0);
  EXPECT_LE(t.distances.back(), 14.0);
}

TEST(Exponent, TooFewPoints) {
  try {
    estimate_delta(single_point(), DeltaMethod::OrbitalFit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
  }
}

TEST(Exponent, PicardLatticeIsTwo) {
  auto est = estimate_delta(lattice_orbit_table(LatticePreset{}, 6), DeltaMethod::OrbitalFit);
  EXPECT_NEAR(est.delta, 2.0, 0.05);
  EXPECT_LE(est.ci_lo, est.delta);
  EXPECT_GE(est.ci_hi, est.delta);
}

TEST(Exponent, SchottkyMethodsWithinGate) {
  GatedDelta g = gated_delta(orbit_table(s2(), 22));
  EXPECT_GT(g.value(), 0.3);
  EXPECT_LT(g.value(), 1.0);
  EXPECT_LE(g.gap(), kDeltaGate);
  EXPECT_EQ(method_name(g.fit.method), "OrbitalFit");
}

TEST(Exponent, FuchsianBelowOne) {
  auto est = estimate_delta(orbit_table(certify(fixture_fuchsian()), 28), DeltaMethod::OrbitalFit);
  EXPECT_LT(est.delta, 1.0);
  EXPECT_GT(est.delta, 0.0);
}

TEST(Exponent, GateTripsOnDisagreement) {
  EXPECT_THROW(gated_delta(orbit_table(s2(), 22), 1e-6), Error);
}

TEST(Exponent, ConjugationInvariant) {
  auto base = estimate_delta(orbit_table(s2(), 24), DeltaMethod::OrbitalFit);
  CertifiedMarking moved = certify(conjugated(fixture_s2(), a_m(0.4, 0.3) * translation(Complex(0.1, -0.2))));
  auto other = estimate_delta(orbit_table(moved, 24), DeltaMethod::OrbitalFit);
  double width = std::max(base.ci_hi - base.ci_lo, other.ci_hi - other.ci_lo);
  EXPECT_LT(std::abs(base.delta - other.delta), width);
}
