#pragma once

#include <string>
#include <vector>

// Steklov problem on the round sphere with two antipodal geodesic caps of
// radius eps removed. Separating u = F(theta) G(psi) with F = e^{i n theta}
// leaves a two-point problem for G on [eps, pi - eps].

namespace steklov::caps {

// 1 / (sin eps log cot(eps/2)), the non-constant rotationally invariant mode.
double sigma_zero(double eps);

struct PlusMinus {
  double minus = 0.0;
  double plus = 0.0;
};

// Both eigenvalues of frequency n >= 1, evaluated through
// tanh(n log cot(eps/2)) so that no power of tan(eps/2) is formed.
PlusMinus sigma_pm(int n, double eps);

// The quadratic determinant of the 2x2 boundary system at sigma, as written
// with cot^{2n}(eps/2) and tan^{2n}(eps/2). Overflows for large n.
double determinant_residual(int n, double eps, double sigma);

// Same quadratic divided by cot^{2n}(eps/2) (sigma + n csc eps)^2: finite
// for all n and O(1) away from the roots.
double determinant_residual_relative(int n, double eps, double sigma);

struct CapsProblem {
  double eps = 0.0;
  int n_max = 8;

  void validate() const;
};

struct CapsEigenvalue {
  double sigma = 0.0;
  int multiplicity = 1;
  int n = 0;
  int sign = 0; // -1 / +1 for sigma_n^-/+; 0 for the constant, +1 for the log mode at n = 0
  std::string label;
};

// Ascending list of the first `count` entries. The n = 0 modes have
// multiplicity 1, every sigma_n^-/+ has multiplicity 2 (cos and sin of
// n theta). n_max is raised until sigma_{n_max+1}^- exceeds the last entry.
std::vector<CapsEigenvalue> full_spectrum(const CapsProblem& problem, int count);

// Finite-element discretization of the radial two-point problem in
// divergence form (sin psi G')' = n^2 G / sin psi, with both Robin ends
// folded into a 2x2 Schur complement. Returns its two eigenvalues, ascending.
// The grid is uniform in log tan(psi/2).
std::vector<double> ode_oracle(int n, double eps, int grid_size);

} // namespace steklov::caps
