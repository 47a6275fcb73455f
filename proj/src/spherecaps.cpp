#include "steklov/spherecaps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"

namespace steklov::caps {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5 * std::numbers::pi)) throw DomainError("cap radius must lie in (0, pi/2)");
}

void check_n(int n) {
  if (n < 1) throw ConfigurationError("angular frequency n must be >= 1");
}

// log cot(eps/2) > 0 on (0, pi/2).
double log_cot_half(double eps) { return -std::log(std::tan(0.5 * eps)); }

// Solve a symmetric tridiagonal system in place (Thomas).
std::vector<double> solve_tridiagonal(const std::vector<double>& diag, const std::vector<double>& off,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  double piv = diag[0];
  if (piv == 0.0) throw NumericalError("ode_oracle: singular interior block");
  c[0] = n > 1 ? off[0] / piv : 0.0;
  rhs[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - off[i - 1] * c[i - 1];
    if (!(std::abs(piv) > 0.0)) throw NumericalError("ode_oracle: singular interior block");
    if (i + 1 < n) c[i] = off[i] / piv;
    rhs[i] = (rhs[i] - off[i - 1] * rhs[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

} // namespace

double sigma_zero(double eps) {
  check_eps(eps);
  return 1.0 / (std::sin(eps) * log_cot_half(eps));
}

PlusMinus sigma_pm(int n, double eps) {
  check_n(n);
  check_eps(eps);
  // (1 - tan^{2n}) / (1 + tan^{2n}) = tanh(n log cot(eps/2)).
  const double th = std::tanh(n * log_cot_half(eps));
  const double s = std::sin(eps);
  return {n * th / s, n / (th * s)};
}

double determinant_residual(int n, double eps, double sigma) {
  check_n(n);
  check_eps(eps);
  const double u = log_cot_half(eps);
  const double C = std::exp(2.0 * n * u);
  const double T = std::exp(-2.0 * n * u);
  const double csc = 1.0 / std::sin(eps);
  return sigma * sigma * (C - T) - 2.0 * n * csc * sigma * (C + T) + n * n * csc * csc * (C - T);
}

double determinant_residual_relative(int n, double eps, double sigma) {
  check_n(n);
  check_eps(eps);
  const double r = std::exp(-4.0 * n * log_cot_half(eps)); // tan^{4n}(eps/2)
  const double nc = n / std::sin(eps);
  const double num = sigma * sigma * (1.0 - r) - 2.0 * nc * sigma * (1.0 + r) + nc * nc * (1.0 - r);
  return num / ((sigma + nc) * (sigma + nc));
}

void CapsProblem::validate() const {
  check_eps(eps);
  if (n_max < 1) throw ConfigurationError("n_max must be >= 1");
}

std::vector<CapsEigenvalue> full_spectrum(const CapsProblem& problem, int count) {
  problem.validate();
  if (count < 1) throw ConfigurationError("full_spectrum: count must be >= 1");
  int n_max = problem.n_max;
  while (true) {
    std::vector<CapsEigenvalue> all;
    all.push_back({0.0, 1, 0, 0, "n=0 const"});
    all.push_back({sigma_zero(problem.eps), 1, 0, 1, "n=0 log"});
    for (int n = 1; n <= n_max; ++n) {
      const auto pm = sigma_pm(n, problem.eps);
      all.push_back({pm.minus, 2, n, -1, "n=" + std::to_string(n) + " -"});
      all.push_back({pm.plus, 2, n, 1, "n=" + std::to_string(n) + " +"});
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const CapsEigenvalue& a, const CapsEigenvalue& b) { return a.sigma < b.sigma; });
    // sigma_n^- and sigma_n^+ both increase with n.
    const double floor = sigma_pm(n_max + 1, problem.eps).minus;
    if (static_cast<int>(all.size()) >= count && all[count - 1].sigma <= floor) {
      all.resize(count);
      return all;
    }
    if (n_max > (1 << 20)) throw NumericalError("full_spectrum: could not certify the requested count");
    n_max *= 2;
  }
}

std::vector<double> ode_oracle(int n, double eps, int grid_size) {
  if (n < 0) throw ConfigurationError("ode_oracle: n must be >= 0");
  check_eps(eps);
  if (grid_size < 100) throw ConfigurationError("ode_oracle: grid_size must be >= 100");

  // Nodes uniform in s = log tan(psi/2), symmetric about psi = pi/2.
  const int N = grid_size;
  const double s0 = std::log(std::tan(0.5 * eps));
  std::vector<double> psi(N + 1);
  for (int i = 0; i <= N; ++i) psi[i] = 2.0 * std::atan(std::exp(s0 * (1.0 - 2.0 * i / N)));
  psi[0] = eps;
  psi[N] = std::numbers::pi - eps;

  // Global tridiagonal matrix of  int sin(psi) G'v' + n^2/sin(psi) G v.
  std::vector<double> diag(N + 1, 0.0), off(N, 0.0);
  static const std::array<double, 4> gx = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                           0.8611363115940526};
  static const std::array<double, 4> gw = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                           0.3478548451374538};
  const double n2 = static_cast<double>(n) * n;
  for (int e = 0; e < N; ++e) {
    const double a = psi[e], b = psi[e + 1], h = b - a;
    const double k = (std::cos(a) - std::cos(b)) / (h * h);
    double m00 = 0.0, m01 = 0.0, m11 = 0.0;
    if (n != 0) {
      for (int g = 0; g < 4; ++g) {
        const double t = 0.5 * (gx[g] + 1.0);
        const double w = 0.5 * h * gw[g] * n2 / std::sin(a + t * h);
        m00 += w * (1 - t) * (1 - t);
        m01 += w * (1 - t) * t;
        m11 += w * t * t;
      }
    }
    diag[e] += k + m00;
    diag[e + 1] += k + m11;
    off[e] += -k + m01;
  }

  // Schur complement onto the two boundary nodes.
  std::vector<double> di(diag.begin() + 1, diag.end() - 1), oi(off.begin() + 1, off.end() - 1);
  std::vector<double> e1(N - 1, 0.0), eN(N - 1, 0.0);
  e1.front() = 1.0;
  eN.back() = 1.0;
  const auto y = solve_tridiagonal(di, oi, e1);
  const auto z = solve_tridiagonal(di, oi, eN);
  const double s00 = diag[0] - off[0] * off[0] * y.front();
  const double s11 = diag[N] - off[N - 1] * off[N - 1] * z.back();
  const double s01 = -off[0] * off[N - 1] * y.back();

  // Boundary mass is sin(eps) at both ends.
  const double mean = 0.5 * (s00 + s11);
  const double rad = std::hypot(0.5 * (s00 - s11), s01);
  const double se = std::sin(eps);
  std::vector<double> out = {(mean - rad) / se, (mean + rad) / se};
  if (!std::isfinite(out[0]) || !std::isfinite(out[1])) throw NumericalError("ode_oracle: non-finite eigenvalue");
  return out;
}

} // namespace steklov::caps
