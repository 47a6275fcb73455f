#pragma once

#include <vector>

#include "steklov/core.hpp"

namespace steklov {

// Boundary condition imposed at the outer radius delta of a model annulus.
enum class OuterCondition { Dirichlet, Neumann };

/// One separated mode a(r) phi_k Y_q on N x [eps, delta] x S^d with metric
/// h + dr^2 + r^2 g_0. Harmonicity reduces to
///
///   a'' + (d/r) a' - (lambda + q(q+d-1)/r^2) a = 0,
///
/// solved by powers of r (or 1, log r) when lambda = 0 and by
/// r^{-(d-1)/2} {I_nu, K_nu}(sqrt(lambda) r), nu = q + (d-1)/2, otherwise.
struct RadialMode {
  double lambda = 0.0;
  int d = 1;
  int q = 0;

  double bessel_order() const { return q + 0.5 * (d - 1); }
  void validate() const;
};

/// The product N x [eps, delta] x S^d.
struct ModelAnnulus {
  double eps = 0.0;
  double delta = 0.0;
  int d = 1;
  SubmanifoldSpec transverse;

  void validate() const;
};

/// Steklov eigenvalue sigma = -a'(eps)/a(eps) of one mode, with a(delta) = 0
/// (Dirichlet) or a'(delta) = 0 (Neumann). The Steklov boundary is r = eps,
/// where the outward normal is -d/dr.
double sigma_mixed(const RadialMode& mode, double eps, double delta, OuterCondition outer);

struct SigmaPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// Both roots of the 2x2 determinant condition for one mode when both ends
/// carry the Steklov condition: -a'(eps_in) = sigma a(eps_in) and
/// a'(eps_out) = sigma a(eps_out). The determinant is quadratic in sigma and
/// is solved in closed form.
SigmaPair sigma_annulus_pair(const RadialMode& mode, double eps_in, double eps_out);

struct MixedSpectrum {
  // Ascending; ties broken by (k, q). The j field is left at 0.
  std::vector<ModeEigenvalue> modes;
  // Smallest eigenvalue among the omitted modes (k > k_max or q > q_max).
  // The separated eigenvalues grow with lambda_k and with q, so every
  // omitted eigenvalue is at least this large.
  double omitted_floor = 0.0;
  // The two candidates for the floor: (k = 0, q = q_max + 1) and
  // (k = k_max + 1, q = 0); the latter is +inf when N has no further modes.
  double floor_q = 0.0;
  double floor_k = 0.0;
  // Set when some returned value exceeds omitted_floor, i.e. the list is
  // not a complete prefix of the spectrum.
  bool truncated = false;
};

/// All separated eigenvalues with k <= k_max, q <= q_max. Multiplicity of
/// entry (k, q) is mult(lambda_k) * m_q(d).
MixedSpectrum mixed_spectrum(const ModelAnnulus& annulus, OuterCondition outer, int k_max, int q_max);

} // namespace steklov
