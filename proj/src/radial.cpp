#include "steklov/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "steklov/bessel.hpp"
#include "steklov/errors.hpp"

namespace steklov {

namespace {

// log u(r) and u'(r)/u(r) for the growing (u1) and decaying (u2) solution.
struct BasisAt {
  double log_u1, g1;
  double log_u2, g2;
};

bool is_log_branch(const RadialMode& mode) { return mode.lambda == 0.0 && mode.q == 0 && mode.d == 1; }

BasisAt basis_at(const RadialMode& mode, double r) {
  if (mode.lambda == 0.0) {
    // r^q and r^{-(q+d-1)}; the log branch is handled by the callers.
    const double alpha = mode.q;
    const double beta = mode.q + mode.d - 1;
    const double lr = std::log(r);
    return {alpha * lr, alpha / r, -beta * lr, -beta / r};
  }
  const double kappa = std::sqrt(mode.lambda);
  const double gamma = 0.5 * (mode.d - 1);
  const auto b = bessel_ik(mode.bessel_order(), kappa * r);
  const double lr = std::log(r);
  return {-gamma * lr + b.log_i, -gamma / r + kappa * b.di, -gamma * lr + b.log_k, -gamma / r + kappa * b.dk};
}

} // namespace

void RadialMode::validate() const {
  if (d < 1) throw ConfigurationError("radial mode: sphere dimension d must be >= 1");
  if (q < 0) throw ConfigurationError("radial mode: sphere index q must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigurationError("radial mode: lambda must be >= 0");
}

void ModelAnnulus::validate() const {
  if (!(eps > 0.0 && eps < delta)) throw ConfigurationError("model annulus requires 0 < eps < delta");
  if (d < 1) throw ConfigurationError("model annulus: sphere dimension d must be >= 1");
  transverse.validate();
}

double sigma_mixed(const RadialMode& mode, double eps, double delta, OuterCondition outer) {
  mode.validate();
  if (!(eps > 0.0 && eps < delta)) throw ConfigurationError("sigma_mixed requires 0 < eps < delta");

  if (is_log_branch(mode)) {
    if (outer == OuterCondition::Neumann) return 0.0;
    return 1.0 / (eps * std::log(delta / eps));
  }
  if (outer == OuterCondition::Neumann && mode.lambda == 0.0 && mode.q == 0) return 0.0;

  const BasisAt in = basis_at(mode, eps);
  const BasisAt out = basis_at(mode, delta);
  // a(r) ~ u1(r) u2(delta) B2 - u2(r) u1(delta) B1, divided by u2(r) u1(delta).
  const double b1 = outer == OuterCondition::Dirichlet ? 1.0 : out.g1;
  const double b2 = outer == OuterCondition::Dirichlet ? 1.0 : out.g2;
  const double ratio = std::exp(in.log_u1 + out.log_u2 - in.log_u2 - out.log_u1);
  const double a = ratio * b2 - b1;
  const double da = ratio * in.g1 * b2 - in.g2 * b1;
  const double sigma = -da / a;
  if (a == 0.0 || !std::isfinite(sigma) || sigma < 0.0) {
    std::ostringstream os;
    os << "sigma_mixed: inconsistent radial solution (lambda=" << mode.lambda << ", d=" << mode.d << ", q=" << mode.q
       << ", eps=" << eps << ", delta=" << delta << ", a(eps)=" << a << ")";
    throw NumericalError(os.str());
  }
  return sigma;
}

SigmaPair sigma_annulus_pair(const RadialMode& mode, double eps_in, double eps_out) {
  mode.validate();
  if (!(eps_in > 0.0 && eps_in < eps_out)) throw ConfigurationError("sigma_annulus_pair requires 0 < eps_in < eps_out");

  // det(sigma) = A sigma^2 + B sigma + C.
  double qa, qb, qc;
  if (is_log_branch(mode)) {
    qa = std::log(eps_out / eps_in);
    qb = -(1.0 / eps_in + 1.0 / eps_out);
    qc = 0.0;
  } else {
    const BasisAt in = basis_at(mode, eps_in);
    const BasisAt out = basis_at(mode, eps_out);
    const double ratio = std::exp(in.log_u1 + out.log_u2 - out.log_u1 - in.log_u2);
    const double a1 = in.g1, a2 = in.g2, b1 = out.g1, b2 = out.g2;
    // ratio (s + a1)(s - b2) - (s + a2)(s - b1)
    qa = ratio - 1.0;
    qb = ratio * (a1 - b2) - (a2 - b1);
    qc = -ratio * a1 * b2 + a2 * b1;
  }

  SigmaPair out;
  if (qc == 0.0) {
    out = {0.0, -qb / qa};
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      if (disc < -1e-10 * qb * qb) {
        std::ostringstream os;
        os << "sigma_annulus_pair: determinant has no real roots (signs A=" << (qa > 0 ? '+' : '-')
           << " B=" << (qb > 0 ? '+' : '-') << " C=" << (qc > 0 ? '+' : '-') << ", discriminant " << disc << ")";
        throw NumericalError(os.str());
      }
      disc = 0.0;
    }
    const double t = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    const double r1 = t / qa;
    const double r2 = qc / t;
    out = {std::min(r1, r2), std::max(r1, r2)};
  }
  if (!std::isfinite(out.minus) || !std::isfinite(out.plus))
    throw NumericalError("sigma_annulus_pair: non-finite root");
  return out;
}

MixedSpectrum mixed_spectrum(const ModelAnnulus& annulus, OuterCondition outer, int k_max, int q_max) {
  annulus.validate();
  if (k_max < 0 || q_max < 0) throw ConfigurationError("mixed_spectrum: k_max and q_max must be >= 0");

  const auto transverse = transverse_spectrum(annulus.transverse, k_max + 2);
  const int k_count = std::min<int>(k_max + 1, static_cast<int>(transverse.size()));
  const BoundaryFamily family =
      outer == OuterCondition::Neumann ? BoundaryFamily::SteklovNeumann : BoundaryFamily::SteklovDirichlet;

  MixedSpectrum result;
  for (int k = 0; k < k_count; ++k) {
    for (int q = 0; q <= q_max; ++q) {
      const RadialMode mode{transverse[k].lambda, annulus.d, q};
      ModeEigenvalue e;
      e.value = sigma_mixed(mode, annulus.eps, annulus.delta, outer);
      e.k = k;
      e.q = q;
      e.multiplicity = transverse[k].multiplicity * sphere_multiplicity(annulus.d, q);
      e.family = family;
      result.modes.push_back(e);
    }
  }
  std::stable_sort(result.modes.begin(), result.modes.end(),
                   [](const ModeEigenvalue& a, const ModeEigenvalue& b) { return a.value < b.value; });

  result.floor_q = sigma_mixed({transverse[0].lambda, annulus.d, q_max + 1}, annulus.eps, annulus.delta, outer);
  result.floor_k = std::numeric_limits<double>::infinity();
  if (static_cast<int>(transverse.size()) > k_count)
    result.floor_k = sigma_mixed({transverse[k_count].lambda, annulus.d, 0}, annulus.eps, annulus.delta, outer);
  const double floor = std::min(result.floor_q, result.floor_k);
  result.omitted_floor = floor;
  result.truncated = !result.modes.empty() && result.modes.back().value > floor;
  return result;
}

} // namespace steklov
