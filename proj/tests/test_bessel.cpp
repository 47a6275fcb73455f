#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steklov/bessel.hpp"
#include "steklov/errors.hpp"

using namespace steklov;

namespace {

struct Reference {
  double nu, x, i, k, ip, kp;
};

// 30-digit values from an arbitrary-precision library.
const Reference kReference[] = {
    {0.0, 0.1, 1.00250156293409560167811340308, 2.4270690247020165578186792364, 0.050062526047092694899782196854,
     -9.85384478087060557437733918854},
    {0.3, 1.7, 1.75070178628784367447546505392, 0.169073052272134391272816873444, 1.24603286094555601651521686144,
     -0.215664779714872682418873071499},
    {2.5, 5.0, 13.7668821386825825977451810822, 0.00649577500438575800238756027271, 14.3010011954528463805296063727,
     -0.00777982355176433807262696172197},
    {10.0, 3.0, 0.0000194643934706129686685695669515, 2459.62042205694677390523105, 0.0000674916772627940548160443977717,
     -8596.69354051642474572329808199},
    {50.0, 700.0, 2.56345654772554551448552094468e+301, 2.77933587701205850245385479162e-305,
     2.56816527865599687244011975256e+301, -2.7883914767313191010865426186e-305},
    {0.0, 700.0, 1.52959334767187373631620722889e+302, 4.66977643168537688098562763644e-306,
     1.52850039023390068814504330937e+302, -4.67311079670796610907571845851e-306},
    {50.0, 0.5, 2.59691526060265195204186804636e-95, 3.85052989182689871010897020857e+92,
     2.59704255737037849028856741952e-93, -3.85072634221346767297241805948e+94},
    {7.25, 35.0, 50245280133558.9368229620324731, 2.78430001477748294180178911717e-16, 50619770325627.3378608257431886,
     -2.88133846729046435120905694335e-16},
    {1.0, 30.5, 1256932623308.47153444853616219, 1.30371566023347537519723267647e-14, 1236851233030.32150634745377323,
     -1.32559707005117748766727653247e-14},
    {20.0, 100.0, 1.44834612564271716410314303214e+41, 3.3852054148901700618601731345e-44,
     1.47005194707959673487333977677e+41, -3.46848871249408989338275181223e-44},
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(Bessel, MatchesHighPrecisionReference) {
  for (const auto& r : kReference) {
    SCOPED_TRACE(testing::Message() << "nu=" << r.nu << " x=" << r.x);
    EXPECT_LT(rel(bessel_iv(r.nu, r.x), r.i), 1e-10);
    EXPECT_LT(rel(bessel_kv(r.nu, r.x), r.k), 1e-10);
    EXPECT_LT(rel(bessel_iv_prime(r.nu, r.x), r.ip), 1e-10);
    EXPECT_LT(rel(bessel_kv_prime(r.nu, r.x), r.kp), 1e-10);
  }
}

TEST(Bessel, SmallArgumentLimits) {
  EXPECT_NEAR(bessel_iv(0.0, 1e-12), 1.0, 1e-15);
  double prev = bessel_kv(1.3, 0.01);
  for (double x = 0.02; x < 50.0; x *= 1.3) {
    const double k = bessel_kv(1.3, x);
    EXPECT_GT(k, 0.0);
    EXPECT_LT(k, prev);
    prev = k;
  }
}

TEST(Bessel, HalfIntegerClosedForm) {
  // I_{1/2}(1) = sqrt(2/pi) sinh(1)
  EXPECT_NEAR(bessel_iv(0.5, 1.0), 0.937674888245487646717, 1e-12);
  for (double x : {0.01, 0.7, 2.0, 3.5, 31.0, 200.0}) {
    const double k_half = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    const double i_half = std::sqrt(2.0 / (std::numbers::pi * x)) * std::sinh(x);
    EXPECT_LT(rel(bessel_kv(0.5, x), k_half), 1e-12) << x;
    EXPECT_LT(rel(bessel_iv(0.5, x), i_half), 1e-12) << x;
  }
}

TEST(Bessel, WronskianAtHalfOrder) {
  const double nu = 0.5, x = 2.0;
  const double w = bessel_iv(nu, x) * bessel_kv_prime(nu, x) - bessel_iv_prime(nu, x) * bessel_kv(nu, x);
  EXPECT_NEAR(w, -1.0 / x, 1e-12);
}

TEST(Bessel, AgreesWithStandardLibrary) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> nu_dist(0.0, 12.0);
  std::uniform_real_distribution<double> logx_dist(std::log(0.05), std::log(60.0));
  for (int t = 0; t < 300; ++t) {
    const double nu = nu_dist(rng);
    const double x = std::exp(logx_dist(rng));
    EXPECT_LT(rel(bessel_iv(nu, x), std::cyl_bessel_i(nu, x)), 1e-9) << nu << " " << x;
    EXPECT_LT(rel(bessel_kv(nu, x), std::cyl_bessel_k(nu, x)), 1e-9) << nu << " " << x;
  }
}

TEST(Bessel, ScaledKernelsStayFinite) {
  for (double nu : {0.0, 3.5, 50.0}) {
    const double is = bessel_iv_scaled(nu, 700.0);
    const double ks = bessel_kv_scaled(nu, 700.0);
    EXPECT_TRUE(std::isfinite(is));
    EXPECT_TRUE(std::isfinite(ks));
    // Product I K ~ 1/(2x) for large x.
    EXPECT_NEAR(is * ks * 2.0 * 700.0, 1.0, 0.05);
  }
}

TEST(Bessel, ContinuousAcrossAsymptoticCrossover) {
  for (double nu : {0.0, 1.0, 2.5}) {
    const double below = bessel_iv_scaled(nu, 30.0 - 1e-12);
    const double above = bessel_iv_scaled(nu, 30.0);
    EXPECT_LT(rel(above, below), 1e-11);
  }
}

TEST(Bessel, RejectsOutOfDomain) {
  EXPECT_THROW(bessel_iv(0.0, 0.0), DomainError);
  EXPECT_THROW(bessel_kv(-0.1, 1.0), DomainError);
  EXPECT_THROW(bessel_iv(1.0, 701.0), DomainError);
  EXPECT_THROW(bessel_kv_prime(51.0, 1.0), DomainError);
}

TEST(Bessel, LogFormHandlesOverflowingMagnitudes) {
  // K_50(1e-10) ~ 1e515 does not fit a double, its log does.
  const auto b = bessel_ik(50.0, 1e-10);
  EXPECT_TRUE(std::isfinite(b.log_k));
  const double expected = std::lgamma(50.0) - std::log(2.0) + 50.0 * std::log(2.0 / 1e-10);
  EXPECT_NEAR(b.log_k, expected, 1e-9 * std::abs(expected));
  EXPECT_NEAR(b.dk, -50.0 / 1e-10, 1e-6 * 50.0 / 1e-10);
}
