#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace steklov {

// Closed-form Laplace spectra supported for a cross-section N.
struct PointKind {};
struct CircleKind {
  double length = 0.0;
};
struct RoundSphereKind {
  int dim = 0;
  double radius = 1.0;
};
struct FlatTorusKind {
  std::vector<double> sides;
};

using SpectrumKind = std::variant<PointKind, CircleKind, RoundSphereKind, FlatTorusKind>;

/// A closed connected submanifold N_j of the ambient manifold, described by
/// its dimension, its volume and a closed-form Laplace spectrum.
///
/// Points carry volume 1 by convention.
struct SubmanifoldSpec {
  int dim = 0;
  double volume = 1.0;
  SpectrumKind kind = PointKind{};

  static SubmanifoldSpec point();
  static SubmanifoldSpec circle(double length);
  static SubmanifoldSpec round_sphere(int dim, double radius);
  static SubmanifoldSpec flat_torus(std::vector<double> sides);

  bool is_point() const { return std::holds_alternative<PointKind>(kind); }

  // Throws ConfigurationError when dim/volume/kind disagree.
  void validate() const;
};

/// Ambient dimension m, the excised submanifolds and lambda_1 of M.
struct ExcisionScenario {
  int m = 2;
  std::vector<SubmanifoldSpec> submanifolds;
  double lambda1_M = 0.0;
  // Optional pairwise distances between the submanifolds; only used for the
  // default collar width.
  std::vector<double> separations;

  int count() const { return static_cast<int>(submanifolds.size()); }
  // Sphere dimension d_j = m - n_j - 1 of the normal fibre of N_j.
  int sphere_dim(int j) const;

  void validate() const;
};

enum class BoundaryFamily { SteklovNeumann, SteklovDirichlet, Steklov };

std::string to_string(BoundaryFamily family);

/// One separated eigenvalue with its provenance: submanifold j, transverse
/// index k (distinct eigenvalue of N_j), sphere index q (distinct eigenvalue
/// of S^d) and the combined multiplicity.
struct ModeEigenvalue {
  double value = 0.0;
  int j = 0;
  int k = 0;
  int q = 0;
  std::int64_t multiplicity = 1;
  BoundaryFamily family = BoundaryFamily::SteklovNeumann;
};

// Distinct Laplace eigenvalues of the round unit sphere S^d: i(i+d-1).
double sphere_eigenvalue(int d, int i);

// Multiplicity of the i-th distinct eigenvalue of S^d:
// C(d+i, d) - C(d+i-2, d).
std::int64_t sphere_multiplicity(int d, int i);

// Cluster of the p-th (individually counted) sphere eigenvalue.
int cluster_index(int d, std::int64_t p);

// |S^d| for the round metric.
double sphere_volume(int d);

struct TransverseEigenvalue {
  double lambda = 0.0;
  std::int64_t multiplicity = 1;
};

/// First `count` distinct Laplace eigenvalues of N, ascending, with
/// multiplicities. A point contributes the single entry (0, 1).
std::vector<TransverseEigenvalue> transverse_spectrum(const SubmanifoldSpec& spec, int count);

// Binomial coefficient, zero when k > n or n < 0.
std::int64_t binomial(std::int64_t n, std::int64_t k);

} // namespace steklov
