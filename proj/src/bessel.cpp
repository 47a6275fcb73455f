#include "steklov/bessel.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr double kEps = 1e-17;
constexpr double kAsymptoticMinX = 30.0;
constexpr double kTemmeMaxX = 2.0;
constexpr double kEulerGamma = 0.5772156649015329;

struct LogRatio {
  double log_value;  // log I_nu(x)
  double next_ratio; // I_{nu+1}(x) / I_nu(x)
};

// Power series sum_k (x^2/4)^k / (k! (nu+1)_k); every term is positive.
LogRatio i_power_series(double nu, double x) {
  const double y = 0.25 * x * x;
  const double log_lead = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0);
  constexpr double rescale = 1e280;
  const double log_rescale = std::log(rescale);
  double t = 1.0, s = 0.0, s1 = 0.0, log_scale = 0.0;
  for (int k = 0; k < 1000000; ++k) {
    s += t;
    s1 += t / (k + nu + 1.0);
    const double ratio = y / ((k + 1.0) * (k + 1.0 + nu));
    t *= ratio;
    if (ratio < 1.0 && t < kEps * s) break;
    if (s > rescale) {
      s /= rescale;
      s1 /= rescale;
      t /= rescale;
      log_scale += log_rescale;
    }
  }
  return {log_lead + std::log(s) + log_scale, 0.5 * x * s1 / s};
}

// log I_nu(x) from the large-argument expansion, or nullopt when the
// expansion does not reach full precision before its terms grow.
std::optional<double> i_asymptotic_log(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) > std::abs(term)) return std::nullopt;
    sum += next;
    term = next;
    if (std::abs(term) < kEps * std::abs(sum)) return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
  }
  return std::nullopt;
}

LogRatio i_log(double nu, double x) {
  if (x >= kAsymptoticMinX) {
    auto a0 = i_asymptotic_log(nu, x);
    auto a1 = a0 ? i_asymptotic_log(nu + 1.0, x) : std::nullopt;
    if (a0 && a1) return {*a0, std::exp(*a1 - *a0)};
  }
  return i_power_series(nu, x);
}

// 1/Gamma(1-mu) and 1/Gamma(1+mu) combinations used by Temme's series.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
  gampl = 1.0 / std::tgamma(1.0 + mu);
  gammi = 1.0 / std::tgamma(1.0 - mu);
  gam2 = 0.5 * (gammi + gampl);
  if (std::abs(mu) < 1e-3) {
    // Odd part of 1/Gamma(1+z) = 1 + g z + c3 z^2 + c4 z^3 + ...
    constexpr double c4 = -0.0420026350340952;
    constexpr double c6 = -0.0421977345555443;
    const double mu2 = mu * mu;
    gam1 = -(kEulerGamma + c4 * mu2 + c6 * mu2 * mu2);
  } else {
    gam1 = (gammi - gampl) / (2.0 * mu);
  }
}

struct LogK {
  double log_value;  // log K_nu(x)
  double next_ratio; // K_{nu+1}(x) / K_nu(x)
};

LogK k_log(double nu, double x) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  double log_kmu = 0.0, ratio = 0.0; // ratio = K_{mu+1}/K_mu
  if (x <= kTemmeMaxX) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i < 10000; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i == 10000) throw NumericalError("bessel_kv: Temme series did not converge");
    log_kmu = std::log(sum);
    ratio = sum1 * (2.0 / x) / sum;
  } else {
    // Steed's continued fraction; yields exp(x) K_mu directly.
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i < 100000; ++i) {
      a -= 2.0 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i == 100000) throw NumericalError("bessel_kv: continued fraction did not converge");
    h *= a1;
    log_kmu = 0.5 * std::log(std::numbers::pi / (2.0 * x)) - std::log(s) - x;
    ratio = (mu + x + 0.5 - h) / x;
  }
  // Forward recurrence K_{a+1} = K_{a-1} + (2a/x) K_a, carried on ratios.
  double log_k = log_kmu;
  for (int i = 1; i <= nl; ++i) {
    log_k += std::log(ratio);
    ratio = 2.0 * (mu + i) / x + 1.0 / ratio;
  }
  return {log_k, ratio};
}

void check_domain(double nu, double x, double nu_max, double x_max, const char* who) {
  if (!(nu >= 0.0 && nu <= nu_max && x > 0.0 && x <= x_max)) {
    std::ostringstream os;
    os << who << ": argument out of domain (nu=" << nu << ", x=" << x << ")";
    throw DomainError(os.str());
  }
}

void check_public(double nu, double x, const char* who) { check_domain(nu, x, 50.0, 700.0, who); }

} // namespace

BesselIK bessel_ik(double nu, double x) {
  check_domain(nu, x, 500.0, 1e5, "bessel_ik");
  const auto iv = i_log(nu, x);
  const auto kv = k_log(nu, x);
  return {iv.log_value, nu / x + iv.next_ratio, kv.log_value, nu / x - kv.next_ratio};
}

double bessel_iv(double nu, double x) {
  check_public(nu, x, "bessel_iv");
  return std::exp(i_log(nu, x).log_value);
}

double bessel_kv(double nu, double x) {
  check_public(nu, x, "bessel_kv");
  return std::exp(k_log(nu, x).log_value);
}

double bessel_iv_prime(double nu, double x) {
  check_public(nu, x, "bessel_iv_prime");
  const auto iv = i_log(nu, x);
  return std::exp(iv.log_value) * (nu / x + iv.next_ratio);
}

double bessel_kv_prime(double nu, double x) {
  check_public(nu, x, "bessel_kv_prime");
  const auto kv = k_log(nu, x);
  return std::exp(kv.log_value) * (nu / x - kv.next_ratio);
}

double bessel_iv_scaled(double nu, double x) {
  check_public(nu, x, "bessel_iv_scaled");
  return std::exp(i_log(nu, x).log_value - x);
}

double bessel_kv_scaled(double nu, double x) {
  check_public(nu, x, "bessel_kv_scaled");
  return std::exp(k_log(nu, x).log_value + x);
}

} // namespace steklov
