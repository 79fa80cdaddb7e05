#include <gtest/gtest.h>

#include <numbers>

#include "ghc/error.hpp"
#include "ghc/flowbox.hpp"
#include "ghc/mobius.hpp"
#include "ghc/sphere.hpp"
#include "support.hpp"

using namespace ghc;
using ghc::test::random_element;
using ghc::test::uniform;

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-9;

Moebius from(Mat2 m) { return normalize_psl(m); }

bool same(const Moebius& g, const Moebius& h, double tol = kTight) { return psl_entry_distance(g, h) < tol; }

}  // namespace

TEST(Normalize, DiagonalIsAlreadyCanonical) {
  Moebius g = from({2, 0, 0, 0.5});
  EXPECT_NEAR(std::abs(g.a() - Complex(2)), 0, kTight);
  EXPECT_NEAR(std::abs(g.d() - Complex(0.5)), 0, kTight);
}

TEST(Normalize, MinusIdentityIsIdentity) {
  EXPECT_TRUE(same(from({-1, 0, 0, -1}), Moebius::identity()));
}

TEST(Normalize, NegativeDeterminantPicksUpFactorI) {
  Moebius g = from({2, 5, 1, 2});
  Complex i(0, 1);
  EXPECT_TRUE(same(g, Moebius::from_unimodular({2.0 * i, 5.0 * i, i, 2.0 * i})));
  EXPECT_NEAR(std::abs(g.matrix().det() - 1.0), 0, kTight);
}

TEST(Normalize, SingularMatrixRejected) {
  try {
    normalize_psl({1, 2, 2, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Classify, Examples) {
  auto diag = classify(from({2, 0, 0, 0.5}));
  ASSERT_EQ(diag.tag, ClassTag::Hyperbolic);
  EXPECT_NEAR(diag.hyperbolic->length, 2 * std::log(2.0), kTight);
  EXPECT_NEAR(diag.hyperbolic->holonomy, 0, kTight);

  EXPECT_EQ(classify(from({1, 1, 0, 1})).tag, ClassTag::Parabolic);
  EXPECT_EQ(classify(Moebius::identity()).tag, ClassTag::Identity);
  EXPECT_EQ(classify(m_theta(0.3)).tag, ClassTag::Elliptic);

  Complex i(0, 1);
  auto g = classify(Moebius::from_unimodular({2.0 * i, 5.0 * i, i, 2.0 * i}));
  ASSERT_EQ(g.tag, ClassTag::Hyperbolic);
  EXPECT_NEAR(g.hyperbolic->length, 2 * std::log(2 + std::sqrt(5.0)), 1e-12);
  EXPECT_NEAR(g.hyperbolic->length, 2.887270, 1e-6);
  EXPECT_NEAR(g.hyperbolic->holonomy, std::numbers::pi / 2, 1e-12);
}

TEST(Classify, ConjugationInvariance) {
  for (int k = 0; k < 1000; ++k) {
    Moebius g = a_m(uniform(0.3, 4), uniform(0, 3)) * translation({uniform(-1, 1), uniform(-1, 1)});
    Moebius h = random_element();
    auto c0 = classify(g), c1 = classify(h * g * h.inverse());
    ASSERT_EQ(c0.tag, c1.tag);
    ASSERT_EQ(c0.tag, ClassTag::Hyperbolic);
    EXPECT_NEAR(c0.hyperbolic->length, c1.hyperbolic->length, kLoose);
    EXPECT_LT(holonomy_distance(c0.hyperbolic->holonomy, c1.hyperbolic->holonomy), kLoose);
  }
}

TEST(HyperbolicData, DiagonalFixesZeroAndInfinity) {
  auto hd = hyperbolic_data(from({2, 0, 0, 0.5}));
  EXPECT_TRUE(hd.attracting.infinite);
  EXPECT_FALSE(hd.repelling.infinite);
  EXPECT_NEAR(std::abs(hd.repelling.z), 0, kTight);
  EXPECT_NEAR(std::abs(hd.lambda - Complex(2)), 0, kTight);
}

TEST(HyperbolicData, ConjugateByTranslation) {
  Moebius n = translation(1);
  auto hd = hyperbolic_data(n * from({2, 0, 0, 0.5}) * n.inverse());
  EXPECT_TRUE(hd.attracting.infinite);
  EXPECT_NEAR(std::abs(hd.repelling.z - Complex(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(hd.lambda - Complex(2)), 0, 1e-12);
}

TEST(HyperbolicData, RealNegativeTrace) {
  Complex i(0, 1);
  auto hd = hyperbolic_data(Moebius::from_unimodular({-2, -3.0 * i, i, -2}));
  EXPECT_NEAR(std::abs(hd.lambda), 2 + std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(hd.length, 2.633916, 1e-6);
  EXPECT_NEAR(hd.holonomy, 0, 1e-12);
}

TEST(HyperbolicData, ConjugatorRebuildsElement) {
  for (int k = 0; k < 1000; ++k) {
    Moebius h = random_element();
    Moebius g = h * a_m(uniform(0.5, 5), uniform(0, 3.1)) * h.inverse();
    auto hd = hyperbolic_data(g);
    Moebius rebuilt = hd.conjugator * a_m(hd.length, hd.holonomy) * hd.conjugator.inverse();
    EXPECT_TRUE(same(rebuilt, g, 1e-8)) << k;
  }
}

TEST(Bruhat, Examples) {
  auto id = bruhat(Moebius::identity(), Orientation::UpperDiagLower);
  EXPECT_NEAR(std::abs(id.x) + std::abs(id.z) + std::abs(id.t) + id.theta, 0, kTight);

  auto c = bruhat(from({2, 1, 1, 1}), Orientation::UpperDiagLower);
  EXPECT_NEAR(std::abs(c.x - Complex(1)), 0, kTight);
  EXPECT_NEAR(std::abs(c.z - Complex(1)), 0, kTight);
  EXPECT_NEAR(c.t, 0, kTight);
  EXPECT_NEAR(c.theta, 0, kTight);

  for (auto o : {Orientation::UpperDiagLower, Orientation::LowerDiagUpper}) {
    try {
      bruhat(from({0, 1, -1, 0}), o);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutsideChart);
    }
  }
}

TEST(Bruhat, RoundTrip) {
  for (auto o : {Orientation::UpperDiagLower, Orientation::LowerDiagUpper}) {
    for (int k = 0; k < 2000; ++k) {
      BruhatCoords c{ghc::test::random_complex(1), ghc::test::random_complex(1), uniform(-3, 3), uniform(0, 3.1),
                     o};
      Moebius g = recompose(c);
      auto back = bruhat(g, o);
      EXPECT_LT(std::abs(back.x - c.x), 1e-12);
      EXPECT_LT(std::abs(back.z - c.z), 1e-12);
      EXPECT_NEAR(back.t, c.t, 1e-12);
      EXPECT_NEAR(back.theta, c.theta, 1e-12);
      EXPECT_TRUE(same(recompose(back), g));
    }
  }
}

TEST(GroupDistance, Basics) {
  Moebius g = random_element();
  EXPECT_NEAR(group_distance(g, g), 0, kTight);
  EXPECT_NEAR(group_distance(Moebius::identity(), m_theta(0.4)),
              group_distance(Moebius::identity(), m_theta(-0.4)), kTight);
  for (int k = 0; k < 200; ++k) {
    Moebius x = random_element(), y = random_element();
    EXPECT_NEAR(group_distance(x, y), group_distance(y, x), 1e-9);
  }
}

TEST(GroupDistance, LinearSlopeAlongA) {
  // The surrogate is a fixed multiple of |t| for small t; the multiple is 1/sqrt 2.
  double t = 1e-4;
  double slope = group_distance(Moebius::identity(), a_t(t)) / t;
  EXPECT_NEAR(slope, 1 / std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(group_distance(Moebius::identity(), a_t(2 * t)) / (2 * t), slope, 1e-4);
}

TEST(BoundaryAction, Examples) {
  auto p = boundary_action(Moebius::identity(), SpherePoint::at({3, 4}));
  EXPECT_NEAR(std::abs(p.z - Complex(3, 4)), 0, kTight);
  EXPECT_NEAR(std::abs(boundary_action(lower_unipotent({0.3, 2}), SpherePoint::at(0)).z), 0, kTight);
  EXPECT_TRUE(boundary_action(translation({0.3, 2}), SpherePoint::infinity()).infinite);

  Complex i(0, 1);
  Moebius g = Moebius::from_unimodular({2.0 * i, 5.0 * i, i, 2.0 * i});
  for (int k = 0; k < 16; ++k) {
    Complex z = Complex(-2) + std::polar(1.0, 2 * std::numbers::pi * k / 16);
    auto w = boundary_action(g, SpherePoint::at(z));
    ASSERT_FALSE(w.infinite);
    EXPECT_NEAR(std::abs(w.z - Complex(2)), 1.0, 1e-12);
  }
}

TEST(Sphere, ImageCircleMatchesPointwise) {
  for (int k = 0; k < 200; ++k) {
    Moebius g = random_element();
    auto d = GeneralizedDisk::disk(ghc::test::random_complex(2), uniform(0.1, 2));
    auto img = image(g, d);
    for (const auto& p : d.boundary_samples(8)) {
      auto q = boundary_action(g, p);
      if (q.infinite) continue;
      EXPECT_LT(std::abs(img.signed_distance(q)), 1e-8 * (1 + std::norm(q.z)));
    }
  }
}

TEST(Sphere, DistanceFromOrigin) {
  EXPECT_NEAR(origin_displacement(Moebius::identity().matrix()), 0, kTight);
  EXPECT_NEAR(origin_displacement(a_t(1.7).matrix()), 1.7, 1e-12);
  EXPECT_NEAR(origin_displacement(translation(1).matrix()), std::acosh(1.5), 1e-12);
  EXPECT_NEAR(std::acosh(1.5), 0.9624, 1e-4);
}
