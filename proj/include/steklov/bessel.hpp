#pragma once

namespace steklov {

/// Modified Bessel functions of real order nu >= 0 at x > 0, kept in log /
/// logarithmic-derivative form so that ratios never overflow:
///
///   I_nu(x)  = exp(log_i),   I_nu'(x) = di * I_nu(x)
///   K_nu(x)  = exp(log_k),   K_nu'(x) = dk * K_nu(x)
///
/// I_nu is summed from its (all positive) power series, or from the
/// large-argument expansion once x >= 30 and that expansion reaches full
/// double precision before its terms start to grow. K_nu uses Temme's series
/// for x <= 2 and Steed's continued fraction above, followed by forward
/// recurrence in the order.
struct BesselIK {
  double log_i = 0.0;
  double di = 0.0;
  double log_k = 0.0;
  double dk = 0.0;
};

// Extended domain used internally: nu in [0, 500], x in (0, 1e5].
BesselIK bessel_ik(double nu, double x);

// Public kernels. Domain: nu in [0, 50], x in (0, 700]; DomainError otherwise.
double bessel_iv(double nu, double x);
double bessel_kv(double nu, double x);
double bessel_iv_prime(double nu, double x);
double bessel_kv_prime(double nu, double x);

// exp(-x) I_nu(x) and exp(x) K_nu(x). Mandatory above x = 30 when forming
// products of I and K.
double bessel_iv_scaled(double nu, double x);
double bessel_kv_scaled(double nu, double x);

} // namespace steklov
