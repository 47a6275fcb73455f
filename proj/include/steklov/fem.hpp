#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "steklov/mesh.hpp"

namespace steklov::fem {

/// P1 matrices over the degrees of freedom of a mesh (vertices after
/// periodic identification).
struct SteklovSystem {
  Eigen::SparseMatrix<double> stiffness;     // annihilates constants
  Eigen::SparseMatrix<double> interior_mass; // consistent
  // Lumped boundary mass per marker: entry i is half the length of the
  // boundary edges of that marker meeting at dof i.
  std::vector<std::pair<int, Eigen::VectorXd>> boundary_mass;
  std::vector<int> dof; // vertex -> dof
  int n_dofs = 0;

  Eigen::VectorXd boundary_mass_for(const std::set<int>& markers) const;
};

SteklovSystem assemble(const Mesh& mesh);

struct Eigenpairs {
  std::vector<double> values;
  Eigen::MatrixXd vectors; // one column per value, indexed by dof
};

/// Smallest `count` eigenpairs of K u = sigma B u. Boundary markers listed
/// as Dirichlet get u = 0, those listed as Neumann get the natural
/// condition, and all remaining markers carry the Steklov condition. The
/// problem is reduced to the Steklov dofs by a Schur complement and solved
/// densely there.
Eigenpairs steklov_eigenpairs(const Mesh& mesh, int count, const std::set<int>& dirichlet_markers = {},
                              const std::set<int>& neumann_markers = {});

std::vector<double> steklov_spectrum(const Mesh& mesh, int count, const std::set<int>& dirichlet_markers = {},
                                     const std::set<int>& neumann_markers = {});

/// Smallest `count` eigenpairs of K u = lambda M u (Neumann on every
/// boundary). Dense for at most 3000 dofs, block shift-invert subspace
/// iteration with Rayleigh-Ritz above.
Eigenpairs neumann_eigenpairs(const Mesh& mesh, int count);

std::vector<double> neumann_spectrum(const Mesh& mesh, int count);

// One representative position per dof (the original vertex).
std::vector<Vec2> dof_positions(const Mesh& mesh);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// |grad f|^2 over the mesh against sigma1_SN times the boundary L^2 norm of
/// f minus its boundary mean on `steklov_marker`. Holds when
/// lhs >= (1 - tol) rhs.
InequalityCheck dirichlet_energy_check(const Mesh& mesh, const Eigen::VectorXd& f, double sigma1_SN,
                                       int steklov_marker = kInnerMarker, double tol = 0.02);

/// |grad f|^2 against lambda1/2 min(|V1|, |V2|) (mean_V1 f - mean_V2 f)^2
/// for disjoint triangle sets V1, V2.
InequalityCheck poincare_check(const Mesh& mesh, const Eigen::VectorXd& f, const std::vector<int>& V1,
                               const std::vector<int>& V2, double lambda1, double tol = 0.02);

struct ScalingCheck {
  std::vector<double> ratios; // sigma_l(c g) / sigma_l(g), l = 1..5
  double expected = 1.0;      // c^{-1/2}
  double bound = 1.0;         // K^{5/2}, K = max(c, 1/c)
  bool holds = true;
};

/// Rescales the mesh to the metric c g and compares all-Steklov eigenvalues.
ScalingCheck metric_scaling_ratio_check(const Mesh& mesh, double c);

/// Eigenvalues in the assembler CSV schema with j, k, q left empty.
void write_fem_csv(std::ostream& os, double eps, const std::vector<double>& values, const std::string& family,
                   bool header = true);

} // namespace steklov::fem
