#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "steklov/errors.hpp"
#include "steklov/radial.hpp"

using namespace steklov;

namespace {

// Shooting oracle: integrate a_tt + (d-1) a_t - (lambda e^{2t} + q(q+d-1)) a = 0
// in t = log r from log(delta) down to log(eps) with classical RK4, starting
// from the outer boundary condition. Independent of any Bessel function.
double shooting_sigma(double lambda, int d, int q, double eps, double delta, OuterCondition outer, int steps = 20000) {
  const double t0 = std::log(delta), t1 = std::log(eps);
  const double h = (t1 - t0) / steps;
  const double c = q * (q + d - 1.0);
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    const double r2 = std::exp(2.0 * t);
    return std::array<double, 2>{y[1], -(d - 1.0) * y[1] + (lambda * r2 + c) * y[0]};
  };
  // y = (a, a_t); a_t = r a'.
  std::array<double, 2> y = outer == OuterCondition::Dirichlet ? std::array<double, 2>{0.0, 1.0}
                                                               : std::array<double, 2>{1.0, 0.0};
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    auto k1 = rhs(t, y);
    std::array<double, 2> y2{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
    auto k2 = rhs(t + 0.5 * h, y2);
    std::array<double, 2> y3{y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
    auto k3 = rhs(t + 0.5 * h, y3);
    std::array<double, 2> y4{y[0] + h * k3[0], y[1] + h * k3[1]};
    auto k4 = rhs(t + h, y4);
    y[0] += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    t += h;
  }
  // sigma = -a'(eps)/a(eps) = -(a_t / eps) / a
  return -y[1] / (eps * y[0]);
}

} // namespace

TEST(Radial, EulerClosedForms) {
  EXPECT_NEAR(sigma_mixed({0.0, 2, 0}, 0.5, 1.0, OuterCondition::Dirichlet), 4.0, 1e-13);
  EXPECT_NEAR(sigma_mixed({0.0, 1, 0}, 1.0 / std::numbers::e, 1.0, OuterCondition::Dirichlet), std::numbers::e, 1e-13);
  for (int d = 1; d <= 5; ++d)
    EXPECT_EQ(sigma_mixed({0.0, d, 0}, 0.1 * d, 0.7, OuterCondition::Neumann), 0.0);
}

TEST(Radial, SmallInnerRadiusLimit) {
  const double eps = 1e-4;
  const double s = sigma_mixed({0.0, 2, 1}, eps, 0.5, OuterCondition::Dirichlet);
  EXPECT_NEAR(eps * s, 2.0, 0.02);
}

TEST(Radial, AgreesWithShootingOracle) {
  struct Case {
    double lambda;
    int d, q;
    double eps, delta;
  };
  const Case cases[] = {{3.0, 2, 1, 0.1, 1.0}, {1.0, 1, 0, 0.05, 0.5}, {25.0, 3, 2, 0.2, 0.9},
                        {0.0, 4, 3, 0.3, 1.0}, {400.0, 1, 4, 0.1, 0.6}, {2.0, 2, 0, 0.01, 0.5}};
  for (const auto& c : cases) {
    for (auto bc : {OuterCondition::Dirichlet, OuterCondition::Neumann}) {
      if (bc == OuterCondition::Neumann && c.lambda == 0.0 && c.q == 0) continue;
      const double got = sigma_mixed({c.lambda, c.d, c.q}, c.eps, c.delta, bc);
      const double ref = shooting_sigma(c.lambda, c.d, c.q, c.eps, c.delta, bc);
      EXPECT_NEAR(got, ref, 1e-8 * ref) << c.lambda << " " << c.d << " " << c.q << " " << (bc == OuterCondition::Neumann);
    }
  }
}

TEST(Radial, ScalingLawHolds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(u(rng) * 4);
    const int q = static_cast<int>(u(rng) * 6);
    const double lambda = u(rng) < 0.2 ? 0.0 : std::exp(-3.0 + 8.0 * u(rng));
    const double eps = std::exp(-6.0 + 5.0 * u(rng));
    const double delta = eps * (1.5 + 20.0 * u(rng));
    const double t = std::exp(-2.0 + 4.0 * u(rng));
    for (auto bc : {OuterCondition::Dirichlet, OuterCondition::Neumann}) {
      const double lhs = sigma_mixed({lambda, d, q}, t * eps, t * delta, bc);
      const double rhs = sigma_mixed({t * t * lambda, d, q}, eps, delta, bc) / t;
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(std::abs(rhs), 1e-300));
    }
  }
}

TEST(Radial, NeumannBelowDirichletModewise) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const RadialMode mode{u(rng) < 0.3 ? 0.0 : 50.0 * u(rng), 1 + static_cast<int>(4 * u(rng)),
                          static_cast<int>(5 * u(rng))};
    const double eps = 0.01 + 0.3 * u(rng);
    const double delta = eps + 0.05 + u(rng);
    EXPECT_LE(sigma_mixed(mode, eps, delta, OuterCondition::Neumann),
              sigma_mixed(mode, eps, delta, OuterCondition::Dirichlet));
  }
}

TEST(Radial, ContinuousAsLambdaVanishes) {
  for (int d = 1; d <= 4; ++d) {
    for (int q = 0; q <= 3; ++q) {
      for (auto bc : {OuterCondition::Dirichlet, OuterCondition::Neumann}) {
        const double s0 = sigma_mixed({0.0, d, q}, 0.05, 0.5, bc);
        const double s1 = sigma_mixed({1e-8, d, q}, 0.05, 0.5, bc);
        if (s0 == 0.0) {
          EXPECT_LT(s1, 1e-4);
        } else {
          EXPECT_NEAR(s1, s0, 1e-4 * s0) << d << " " << q;
        }
      }
    }
  }
}

TEST(Radial, LogarithmicNeumannAsymptotic) {
  // d = 1, q = 0, lambda > 0: eps (|log(sqrt(lambda) eps)| - K0'(X)/I0'(X)) sigma -> 1.
  const double lambda = 1.0, delta = 0.5, eps = 1e-6;
  const double s = sigma_mixed({lambda, 1, 0}, eps, delta, OuterCondition::Neumann);
  const double X = std::sqrt(lambda) * delta;
  const double k0p = -std::cyl_bessel_k(1.0, X);
  const double i0p = std::cyl_bessel_i(1.0, X);
  const double scaled = eps * (std::abs(std::log(std::sqrt(lambda) * eps)) - k0p / i0p) * s;
  EXPECT_NEAR(scaled, 1.0, 0.02);
}

TEST(Radial, AnnulusPairLogBranch) {
  const auto p = sigma_annulus_pair({0.0, 1, 0}, 1.0 / std::numbers::e, 1.0);
  EXPECT_NEAR(p.minus, 0.0, 1e-14);
  EXPECT_NEAR(p.plus, std::numbers::e + 1.0, 1e-12);
}

TEST(Radial, AnnulusPairMatchesDirectDeterminant) {
  // a = c1 r + c2 / r on [0.5, 1]; build the 2x2 matrix directly.
  const double e1 = 0.5, e2 = 1.0;
  auto det = [&](double s) {
    const double m11 = -1.0 - s * e1, m12 = 1.0 / (e1 * e1) - s / e1;
    const double m21 = 1.0 - s * e2, m22 = -1.0 / (e2 * e2) - s / e2;
    return m11 * m22 - m12 * m21;
  };
  const auto p = sigma_annulus_pair({0.0, 1, 1}, e1, e2);
  EXPECT_GT(p.minus, 0.0);
  EXPECT_LT(p.minus, p.plus);
  const double scale = std::abs(det(0.0)) + 1.0;
  EXPECT_NEAR(det(p.minus) / scale, 0.0, 1e-12);
  EXPECT_NEAR(det(p.plus) / scale, 0.0, 1e-12);
  // Exactly two sign changes of the determinant on a fine scan.
  int changes = 0;
  double prev = det(0.0);
  for (double s = 0.01; s < 50.0; s += 0.01) {
    const double v = det(s);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  EXPECT_EQ(changes, 2);
}

TEST(Radial, AnnulusPairBesselBranchIsRootOfDeterminant) {
  // Nonzero lambda: check against the shooting oracle with two Steklov ends
  // by verifying both roots make the Neumann-to-Robin shot consistent.
  const RadialMode mode{4.0, 2, 1};
  const double e1 = 0.2, e2 = 1.0;
  const auto p = sigma_annulus_pair(mode, e1, e2);
  for (double s : {p.minus, p.plus}) {
    // Integrate inward from e2 with a(e2) = 1, a'(e2) = s.
    const int steps = 20000;
    const double t0 = std::log(e2), t1 = std::log(e1), h = (t1 - t0) / steps;
    const double c = mode.q * (mode.q + mode.d - 1.0);
    double a = 1.0, at = s * e2, t = t0;
    auto f = [&](double tt, double y0, double y1) {
      return std::array<double, 2>{y1, -(mode.d - 1.0) * y1 + (mode.lambda * std::exp(2 * tt) + c) * y0};
    };
    for (int i = 0; i < steps; ++i) {
      auto k1 = f(t, a, at);
      auto k2 = f(t + h / 2, a + h / 2 * k1[0], at + h / 2 * k1[1]);
      auto k3 = f(t + h / 2, a + h / 2 * k2[0], at + h / 2 * k2[1]);
      auto k4 = f(t + h, a + h * k3[0], at + h * k3[1]);
      a += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
      at += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
      t += h;
    }
    EXPECT_NEAR(-(at / e1) / a, s, 1e-7 * s);
  }
}

TEST(Radial, AnnulusPairShrinkingInnerRadius) {
  for (int d = 1; d <= 3; ++d) {
    for (int q = (d == 1 ? 1 : 0); q <= 2; ++q) {
      double prev_dev = 1e300;
      for (double e1 : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const auto p = sigma_annulus_pair({0.0, d, q}, e1, 1.0);
        const double dev = std::abs(e1 * p.plus - (q + d - 1));
        EXPECT_LE(dev, prev_dev + 1e-12);
        prev_dev = dev;
      }
      EXPECT_LT(prev_dev, 1e-3 * (q + d - 1));
    }
  }
}

TEST(Radial, MixedSpectrumPointNeumannStartsAtZero) {
  ModelAnnulus a{1e-3, 0.5, 2, SubmanifoldSpec::point()};
  const auto s = mixed_spectrum(a, OuterCondition::Neumann, 0, 5);
  ASSERT_FALSE(s.modes.empty());
  EXPECT_EQ(s.modes[0].value, 0.0);
  EXPECT_EQ(s.modes[0].k, 0);
  EXPECT_EQ(s.modes[0].q, 0);
  EXPECT_EQ(s.modes[1].multiplicity, 3); // q = 1 on S^2
  for (std::size_t i = 1; i < s.modes.size(); ++i) EXPECT_LE(s.modes[i - 1].value, s.modes[i].value);
}

TEST(Radial, MixedSpectrumPointInPlaneDirichlet) {
  const double eps = 1e-6;
  ModelAnnulus a{eps, 0.5, 1, SubmanifoldSpec::point()};
  const auto s = mixed_spectrum(a, OuterCondition::Dirichlet, 0, 3);
  EXPECT_NEAR(s.modes[0].value * eps * std::abs(std::log(eps)), 1.0, 0.06);
}

TEST(Radial, MixedSpectrumCircleInFourDimensions) {
  const double eps = 1e-4;
  ModelAnnulus a{eps, 0.5, 2, SubmanifoldSpec::circle(2.0 * std::numbers::pi)};
  const auto s = mixed_spectrum(a, OuterCondition::Dirichlet, 3, 3);
  EXPECT_NEAR(s.modes[0].value * eps, 1.0, 0.01);
  EXPECT_EQ(s.modes[0].k, 0);
  EXPECT_EQ(s.modes[0].q, 0);
}

TEST(Radial, TruncationFlag) {
  ModelAnnulus a{0.01, 0.5, 1, SubmanifoldSpec::circle(2.0 * std::numbers::pi)};
  // With many transverse modes but few sphere modes, q = 2 values are
  // omitted although they are smaller than high-k entries.
  const auto s = mixed_spectrum(a, OuterCondition::Dirichlet, 40, 1);
  EXPECT_TRUE(s.truncated);
  const auto t = mixed_spectrum(a, OuterCondition::Dirichlet, 3, 0);
  EXPECT_FALSE(t.truncated);
  // Every omitted value lies above the reported floor.
  const double omitted = sigma_mixed({0.0, 1, 1}, 0.01, 0.5, OuterCondition::Dirichlet);
  EXPECT_GE(omitted, t.omitted_floor);
}

TEST(Radial, Errors) {
  EXPECT_THROW(sigma_mixed({0.0, 2, 0}, 0.5, 0.5, OuterCondition::Dirichlet), ConfigurationError);
  EXPECT_THROW(sigma_mixed({-1.0, 2, 0}, 0.1, 0.5, OuterCondition::Dirichlet), ConfigurationError);
  EXPECT_THROW(sigma_annulus_pair({0.0, 0, 0}, 0.1, 0.5), ConfigurationError);
}
