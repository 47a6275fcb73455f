#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "steklov/core.hpp"
#include "steklov/errors.hpp"

using namespace steklov;

TEST(Core, SphereEigenvalues) {
  EXPECT_EQ(sphere_eigenvalue(2, 0), 0.0);
  EXPECT_EQ(sphere_eigenvalue(2, 2), 6.0);
  EXPECT_EQ(sphere_eigenvalue(1, 3), 9.0);
  for (int d = 1; d <= 6; ++d)
    for (int i = 0; i < 30; ++i) EXPECT_LT(sphere_eigenvalue(d, i), sphere_eigenvalue(d, i + 1));
}

TEST(Core, SphereMultiplicities) {
  EXPECT_EQ(sphere_multiplicity(2, 0), 1);
  EXPECT_EQ(sphere_multiplicity(2, 1), 3);
  EXPECT_EQ(sphere_multiplicity(1, 1), 2);
  EXPECT_EQ(sphere_multiplicity(1, 7), 2);
  EXPECT_EQ(sphere_multiplicity(2, 5), 11);
  EXPECT_EQ(sphere_multiplicity(3, 2), 9);
}

// Harmonic polynomials of degree i in d+1 variables: the cumulative count
// telescopes to C(d+I, d) + C(d+I-1, d).
TEST(Core, MultiplicitySumsTelescope) {
  for (int d = 1; d <= 5; ++d) {
    std::int64_t sum = 0;
    for (int I = 0; I <= 20; ++I) {
      sum += sphere_multiplicity(d, I);
      EXPECT_EQ(sum, binomial(d + I, d) + binomial(d + I - 1, d)) << d << " " << I;
    }
  }
}

TEST(Core, ClusterIndexExamples) {
  EXPECT_EQ(cluster_index(2, 0), 0);
  EXPECT_EQ(cluster_index(2, 3), 1);
  EXPECT_EQ(cluster_index(2, 4), 2);
  EXPECT_EQ(cluster_index(1, 1), 1);
  EXPECT_EQ(cluster_index(1, 2), 1);
  EXPECT_EQ(cluster_index(1, 3), 2);
}

TEST(Core, ClusterIndexPartitionsIndices) {
  for (int d = 1; d <= 5; ++d) {
    std::int64_t start = 1; // p = 0 is the q = 0 cell
    EXPECT_EQ(cluster_index(d, 0), 0);
    for (int q = 1; q <= 8; ++q) {
      // For q >= 1 the cell starts at m_0 + ... + m_{q-1} and has m_q members,
      // except that q = 1 absorbs nothing below p = 1.
      const std::int64_t size = sphere_multiplicity(d, q);
      for (std::int64_t p = start; p < start + size; ++p) EXPECT_EQ(cluster_index(d, p), q) << d << " " << p;
      EXPECT_EQ(cluster_index(d, start + size), q + 1);
      start += size;
    }
  }
}

TEST(Core, SphereVolume) {
  EXPECT_NEAR(sphere_volume(1), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_volume(2), 4.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(sphere_volume(3), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Core, TransverseSpectra) {
  auto p = transverse_spectrum(SubmanifoldSpec::point(), 3);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].lambda, 0.0);
  EXPECT_EQ(p[0].multiplicity, 1);

  auto c = transverse_spectrum(SubmanifoldSpec::circle(2.0 * std::numbers::pi), 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0].lambda, 0.0, 1e-15);
  EXPECT_EQ(c[0].multiplicity, 1);
  EXPECT_NEAR(c[1].lambda, 1.0, 1e-14);
  EXPECT_EQ(c[1].multiplicity, 2);

  auto s = transverse_spectrum(SubmanifoldSpec::round_sphere(2, 1.0), 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].lambda, 2.0);
  EXPECT_EQ(s[1].multiplicity, 3);
}

TEST(Core, FlatTorusSpectrumByEnumeration) {
  // Unit square torus: (2 pi)^2 (a^2 + b^2); values 0, 1, 2, 4, 5 with
  // multiplicities 1, 4, 4, 4, 8.
  auto t = transverse_spectrum(SubmanifoldSpec::flat_torus({1.0, 1.0}), 5);
  ASSERT_EQ(t.size(), 5u);
  const double w = 4.0 * std::numbers::pi * std::numbers::pi;
  const double expect_l[] = {0, 1, 2, 4, 5};
  const std::int64_t expect_m[] = {1, 4, 4, 4, 8};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(t[i].lambda, w * expect_l[i], 1e-10);
    EXPECT_EQ(t[i].multiplicity, expect_m[i]);
  }
  // Rectangular torus {1, 2}: eigenvalues (2pi)^2 (a^2 + b^2/4).
  auto r = transverse_spectrum(SubmanifoldSpec::flat_torus({1.0, 2.0}), 3);
  EXPECT_NEAR(r[1].lambda, w * 0.25, 1e-10);
  EXPECT_EQ(r[1].multiplicity, 2);
  EXPECT_NEAR(r[2].lambda, w * 1.0, 1e-10);
  EXPECT_EQ(r[2].multiplicity, 4); // (0, +-2) and (+-1, 0)
}

TEST(Core, ScenarioValidation) {
  ExcisionScenario s{2, {SubmanifoldSpec::point(), SubmanifoldSpec::point()}, 4.0 * std::numbers::pi * std::numbers::pi};
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.sphere_dim(0), 1);

  ExcisionScenario bad = s;
  bad.submanifolds.push_back(SubmanifoldSpec::circle(1.0)); // codimension 1 in m = 2
  EXPECT_THROW(bad.validate(), ConfigurationError);

  SubmanifoldSpec p = SubmanifoldSpec::point();
  p.volume = 2.0;
  EXPECT_THROW(p.validate(), ConfigurationError);

  ExcisionScenario no_lambda = s;
  no_lambda.lambda1_M = 0.0;
  EXPECT_THROW(no_lambda.validate(), ConfigurationError);
}
