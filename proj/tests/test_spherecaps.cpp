#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"
#include "steklov/spherecaps.hpp"

using namespace steklov;
using namespace steklov::caps;

namespace {
constexpr double kPi = std::numbers::pi;
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST(SphereCaps, SigmaZero) {
  EXPECT_NEAR(sigma_zero(kPi / 3), 1.0 / (std::sqrt(3.0) / 2 * std::log(std::sqrt(3.0))), 1e-13);
  EXPECT_NEAR(sigma_zero(kPi / 3), 2.10210745007984536, 1e-13);
  EXPECT_GT(sigma_zero(kPi / 2 - 1e-9), 1e8);
  double prev = 1e300;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double dev = std::abs(eps * std::abs(std::log(eps)) * sigma_zero(eps) - 1.0);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 0.05);
  EXPECT_THROW(sigma_zero(0.0), DomainError);
  EXPECT_THROW(sigma_zero(kPi / 2), DomainError);
}

TEST(SphereCaps, SigmaPlusMinusExamples) {
  const auto p = sigma_pm(1, kPi / 4);
  EXPECT_NEAR(p.minus, 1.0, 1e-14);
  EXPECT_NEAR(p.plus, 2.0, 1e-14);
  const double eps = 1e-3;
  const auto q = sigma_pm(2, eps);
  EXPECT_NEAR(eps * q.minus, 2.0, 1e-5);
  EXPECT_NEAR(eps * q.plus, 2.0, 1e-5);
}

TEST(SphereCaps, FirstMinusIsCotangent) {
  for (double eps : {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.5}) EXPECT_LT(rel(sigma_pm(1, eps).minus, 1.0 / std::tan(eps)), 1e-12);
}

TEST(SphereCaps, PowerFormAgreesWhereItIsStable) {
  for (int n = 1; n <= 6; ++n) {
    for (double eps : {0.1, 0.5, 1.0}) {
      const double t2n = std::pow(std::tan(eps / 2), 2 * n);
      const auto p = sigma_pm(n, eps);
      EXPECT_LT(rel(p.minus, n * (1 - t2n) / (std::sin(eps) * (1 + t2n))), 1e-13);
      EXPECT_LT(rel(p.plus, n * (1 + t2n) / (std::sin(eps) * (1 - t2n))), 1e-13);
      EXPECT_LT(p.minus, p.plus);
    }
  }
}

TEST(SphereCaps, LargeFrequencyStaysFinite) {
  const auto p = sigma_pm(50, 1e-4);
  EXPECT_TRUE(std::isfinite(p.minus));
  EXPECT_TRUE(std::isfinite(p.plus));
  EXPECT_NEAR(1e-4 * p.minus, 50.0, 1e-4);
}

TEST(SphereCaps, DeterminantVanishesAtRoots) {
  for (int n = 1; n <= 10; ++n) {
    for (double eps : {0.1, 0.5, 1.0}) {
      const auto p = sigma_pm(n, eps);
      EXPECT_LT(std::abs(determinant_residual_relative(n, eps, p.minus)), 1e-9);
      EXPECT_LT(std::abs(determinant_residual_relative(n, eps, p.plus)), 1e-9);
      // Raw quadratic, scaled by its own coefficients.
      const double C = std::pow(1.0 / std::tan(eps / 2), 2 * n);
      const double nc = n / std::sin(eps);
      for (double s : {p.minus, p.plus})
        EXPECT_LT(std::abs(determinant_residual(n, eps, s)) / (C * (s + nc) * (s + nc)), 1e-9);
    }
  }
}

TEST(SphereCaps, DeterminantAtZero) {
  const double eps = kPi / 4;
  const double c = 1.0 / std::tan(eps / 2), t = std::tan(eps / 2);
  const double expected = 2.0 * (c * c - t * t);
  EXPECT_NEAR(determinant_residual(1, eps, 0.0), expected, 1e-12);
  EXPECT_GT(determinant_residual(1, eps, 0.0), 0.0);
}

TEST(SphereCaps, FullSpectrum) {
  auto s = full_spectrum({0.1, 2}, 12);
  ASSERT_EQ(s.size(), 12u);
  EXPECT_EQ(s[0].sigma, 0.0);
  EXPECT_EQ(s[0].multiplicity, 1);
  EXPECT_DOUBLE_EQ(s[1].sigma, std::min(sigma_zero(0.1), sigma_pm(1, 0.1).minus));
  EXPECT_EQ(s[1].label, "n=0 log");
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i - 1].sigma, s[i].sigma);
  // n_max was raised past the requested 2.
  int highest = 0;
  for (const auto& e : s) highest = std::max(highest, e.n);
  EXPECT_GT(highest, 2);
}

TEST(SphereCaps, TruncatedSpectrumLimits) {
  // Entries beyond the two n = 0 modes scale like n / eps.
  const double eps = 1e-4;
  auto s = full_spectrum({eps, 4}, 10);
  for (std::size_t i = 2; i < s.size(); ++i) EXPECT_NEAR(eps * s[i].sigma, s[i].n, 1e-3) << s[i].label;
}

TEST(SphereCaps, ScaledValuesApproachFrequency) {
  for (int n = 1; n <= 5; ++n) {
    double prev_m = 1e300, prev_p = 1e300;
    for (double eps : {0.1, 0.03, 0.01, 0.003, 0.001}) {
      const auto p = sigma_pm(n, eps);
      const double dm = std::abs(eps * p.minus - n), dp = std::abs(eps * p.plus - n);
      EXPECT_LT(dm, prev_m);
      EXPECT_LT(dp, prev_p);
      prev_m = dm;
      prev_p = dp;
    }
    EXPECT_LT(prev_m, 0.005 * n);
    EXPECT_LT(prev_p, 0.005 * n);
  }
}

TEST(SphereCaps, OracleMatchesClosedForms) {
  auto v = ode_oracle(1, 0.3, 2000);
  const auto p = sigma_pm(1, 0.3);
  EXPECT_LT(rel(v[0], p.minus), 1e-5);
  EXPECT_LT(rel(v[1], p.plus), 1e-5);
  auto z = ode_oracle(0, 0.3, 2000);
  EXPECT_LT(std::abs(z[0]), 1e-10);
  EXPECT_LT(rel(z[1], sigma_zero(0.3)), 1e-5);
}

TEST(SphereCaps, OracleIsSecondOrder) {
  const auto p = sigma_pm(3, 0.1);
  const double e1 = rel(ode_oracle(3, 0.1, 400)[1], p.plus);
  const double e2 = rel(ode_oracle(3, 0.1, 800)[1], p.plus);
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
}

TEST(SphereCaps, OracleRejectsCoarseGrid) {
  EXPECT_THROW(ode_oracle(1, 0.3, 50), ConfigurationError);
  EXPECT_THROW(ode_oracle(-1, 0.3, 200), ConfigurationError);
}
