#include "steklov/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "steklov/errors.hpp"

namespace steklov::fem {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;
using Ldlt = Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>>;

constexpr int kDenseNeumannLimit = 3000;
constexpr int kSchurBlock = 64;

enum DofClass : char { kInterior = 0, kSteklov = 1, kDirichlet = 2 };

void check_residuals(const SpMat& K, const Eigen::MatrixXd& KB_vectors, const std::vector<double>& values,
                     const Eigen::MatrixXd& vectors, const char* what) {
  // KB_vectors holds B * vectors (or M * vectors).
  const double knorm = K.norm();
  for (int c = 0; c < static_cast<int>(values.size()); ++c) {
    const Eigen::VectorXd Ku = K * vectors.col(c);
    const Eigen::VectorXd r = Ku - values[c] * KB_vectors.col(c);
    const double scale = knorm * vectors.col(c).norm() + std::abs(values[c]) * KB_vectors.col(c).norm() + 1e-300;
    const double res = r.norm() / scale;
    if (!(res < 1e-7)) {
      std::ostringstream os;
      os << what << ": eigenpair " << c << " (value " << values[c] << ") has relative residual " << res;
      throw NumericalError(os.str());
    }
  }
}

void factor(Ldlt& ldlt, const SpMat& A, const char* what) {
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success) throw NumericalError(std::string(what) + ": sparse factorization failed");
}

} // namespace

Eigen::VectorXd SteklovSystem::boundary_mass_for(const std::set<int>& markers) const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_dofs);
  for (const auto& [marker, mass] : boundary_mass)
    if (markers.count(marker)) b += mass;
  return b;
}

SteklovSystem assemble(const Mesh& mesh) {
  SteklovSystem sys;
  sys.dof = mesh.dof_map(&sys.n_dofs);
  Triplets kt, mt;
  kt.reserve(9 * mesh.triangles.size());
  mt.reserve(9 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const auto& p0 = mesh.vertices[t[0]];
    const auto& p1 = mesh.vertices[t[1]];
    const auto& p2 = mesh.vertices[t[2]];
    const double area = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]));
    // Edge opposite vertex i.
    const double e[3][2] = {{p2[0] - p1[0], p2[1] - p1[1]}, {p0[0] - p2[0], p0[1] - p2[1]}, {p1[0] - p0[0], p1[1] - p0[1]}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int a = sys.dof[t[i]], b = sys.dof[t[j]];
        kt.emplace_back(a, b, (e[i][0] * e[j][0] + e[i][1] * e[j][1]) / (4.0 * area));
        mt.emplace_back(a, b, area / 12.0 * (i == j ? 2.0 : 1.0));
      }
  }
  sys.stiffness.resize(sys.n_dofs, sys.n_dofs);
  sys.stiffness.setFromTriplets(kt.begin(), kt.end());
  sys.interior_mass.resize(sys.n_dofs, sys.n_dofs);
  sys.interior_mass.setFromTriplets(mt.begin(), mt.end());

  for (int marker : mesh.markers()) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(sys.n_dofs);
    for (const auto& e : mesh.boundary_edges) {
      if (e.marker != marker) continue;
      const double len =
          std::hypot(mesh.vertices[e.b][0] - mesh.vertices[e.a][0], mesh.vertices[e.b][1] - mesh.vertices[e.a][1]);
      b[sys.dof[e.a]] += 0.5 * len;
      b[sys.dof[e.b]] += 0.5 * len;
    }
    sys.boundary_mass.emplace_back(marker, std::move(b));
  }
  return sys;
}

Eigenpairs steklov_eigenpairs(const Mesh& mesh, int count, const std::set<int>& dirichlet_markers,
                              const std::set<int>& neumann_markers) {
  if (count < 1) throw ConfigurationError("steklov_spectrum: count must be >= 1");
  const auto sys = assemble(mesh);
  const int n = sys.n_dofs;

  std::set<int> steklov_markers;
  for (int m : mesh.markers())
    if (!dirichlet_markers.count(m) && !neumann_markers.count(m)) steklov_markers.insert(m);
  if (steklov_markers.empty()) throw ConfigurationError("steklov_spectrum: no boundary carries the Steklov condition");

  std::vector<char> cls(n, kInterior);
  for (const auto& e : mesh.boundary_edges)
    if (dirichlet_markers.count(e.marker)) cls[sys.dof[e.a]] = cls[sys.dof[e.b]] = kDirichlet;
  for (const auto& e : mesh.boundary_edges)
    if (steklov_markers.count(e.marker))
      for (int v : {e.a, e.b})
        if (cls[sys.dof[v]] != kDirichlet) cls[sys.dof[v]] = kSteklov;

  std::vector<int> local(n, -1), s_dofs, i_dofs;
  for (int d = 0; d < n; ++d) {
    if (cls[d] == kSteklov) {
      local[d] = static_cast<int>(s_dofs.size());
      s_dofs.push_back(d);
    } else if (cls[d] == kInterior) {
      local[d] = static_cast<int>(i_dofs.size());
      i_dofs.push_back(d);
    }
  }
  const int ns = static_cast<int>(s_dofs.size()), ni = static_cast<int>(i_dofs.size());
  if (count > ns) throw ConfigurationError("steklov_spectrum: count exceeds the number of Steklov boundary vertices");

  Triplets ss, si, ii;
  for (int col = 0; col < sys.stiffness.outerSize(); ++col)
    for (SpMat::InnerIterator it(sys.stiffness, col); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (cls[r] == kDirichlet || cls[c] == kDirichlet) continue;
      if (cls[r] == kSteklov && cls[c] == kSteklov) ss.emplace_back(local[r], local[c], it.value());
      else if (cls[r] == kSteklov && cls[c] == kInterior) si.emplace_back(local[r], local[c], it.value());
      else if (cls[r] == kInterior && cls[c] == kInterior) ii.emplace_back(local[r], local[c], it.value());
    }
  SpMat Kss(ns, ns), Ksi(ns, ni), Kii(ni, ni);
  Kss.setFromTriplets(ss.begin(), ss.end());
  Ksi.setFromTriplets(si.begin(), si.end());
  Kii.setFromTriplets(ii.begin(), ii.end());
  const SpMat Kis = Ksi.transpose();

  // Discrete Dirichlet-to-Neumann operator on the Steklov dofs.
  Eigen::MatrixXd A = Eigen::MatrixXd(Kss);
  Ldlt ldlt;
  if (ni > 0) {
    factor(ldlt, Kii, "steklov_spectrum");
    for (int c0 = 0; c0 < ns; c0 += kSchurBlock) {
      const int w = std::min(kSchurBlock, ns - c0);
      const Eigen::MatrixXd rhs = Eigen::MatrixXd(Kis.middleCols(c0, w));
      const Eigen::MatrixXd X = ldlt.solve(rhs);
      A.middleCols(c0, w) -= Ksi * X;
    }
  }
  A = 0.5 * (A + A.transpose()).eval();

  const Eigen::VectorXd b_all = sys.boundary_mass_for(steklov_markers);
  Eigen::VectorXd binv_sqrt(ns);
  for (int k = 0; k < ns; ++k) {
    if (!(b_all[s_dofs[k]] > 0)) throw NumericalError("steklov_spectrum: zero boundary mass on a Steklov vertex");
    binv_sqrt[k] = 1.0 / std::sqrt(b_all[s_dofs[k]]);
  }
  const Eigen::MatrixXd C = binv_sqrt.asDiagonal() * A * binv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  if (es.info() != Eigen::Success) throw NumericalError("steklov_spectrum: dense eigensolver failed");

  Eigenpairs out;
  out.vectors = Eigen::MatrixXd::Zero(n, count);
  const double top = std::max(std::abs(es.eigenvalues()[count - 1]), 1.0);
  for (int c = 0; c < count; ++c) {
    double v = es.eigenvalues()[c];
    if (v < 0 && v > -1e-10 * top) v = 0.0;
    if (v < 0) throw NumericalError("steklov_spectrum: negative eigenvalue " + std::to_string(v));
    out.values.push_back(v);
    const Eigen::VectorXd y = binv_sqrt.asDiagonal() * es.eigenvectors().col(c);
    for (int k = 0; k < ns; ++k) out.vectors(s_dofs[k], c) = y[k];
    if (ni > 0) {
      const Eigen::VectorXd ui = -ldlt.solve(Kis * y);
      for (int k = 0; k < ni; ++k) out.vectors(i_dofs[k], c) = ui[k];
    }
  }

  // Residual on the free dofs: K u - sigma B u = 0 away from Dirichlet rows.
  SpMat K = sys.stiffness;
  Eigen::VectorXd mask = Eigen::VectorXd::Ones(n);
  for (int d = 0; d < n; ++d)
    if (cls[d] == kDirichlet) mask[d] = 0.0;
  K = mask.asDiagonal() * K;
  const Eigen::MatrixXd Bu = b_all.asDiagonal() * out.vectors;
  check_residuals(K, Bu, out.values, out.vectors, "steklov_spectrum");
  return out;
}

std::vector<double> steklov_spectrum(const Mesh& mesh, int count, const std::set<int>& dirichlet_markers,
                                     const std::set<int>& neumann_markers) {
  return steklov_eigenpairs(mesh, count, dirichlet_markers, neumann_markers).values;
}

Eigenpairs neumann_eigenpairs(const Mesh& mesh, int count) {
  if (count < 2) throw ConfigurationError("neumann_spectrum: count must be >= 2");
  const auto sys = assemble(mesh);
  const int n = sys.n_dofs;
  if (count > n) throw ConfigurationError("neumann_spectrum: count exceeds the number of dofs");
  const SpMat& K = sys.stiffness;
  const SpMat& M = sys.interior_mass;
  Eigenpairs out;

  if (n <= kDenseNeumannLimit) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges{Eigen::MatrixXd(K), Eigen::MatrixXd(M)};
    if (ges.info() != Eigen::Success) throw NumericalError("neumann_spectrum: dense eigensolver failed");
    for (int c = 0; c < count; ++c) out.values.push_back(ges.eigenvalues()[c]);
    out.vectors = ges.eigenvectors().leftCols(count);
  } else {
    // Shift-invert block subspace iteration on (K + alpha M)^{-1} M.
    const double alpha = 1.0;
    const SpMat shifted = K + alpha * M;
    Ldlt ldlt;
    factor(ldlt, shifted, "neumann_spectrum");
    const int p = std::min(n, count + std::max(10, count));
    std::mt19937_64 rng(20240607);
    std::normal_distribution<double> g;
    Eigen::MatrixXd X(n, p);
    for (int c = 0; c < p; ++c)
      for (int r = 0; r < n; ++r) X(r, c) = g(rng);
    bool converged = false;
    Eigen::VectorXd vals;
    const double knorm = K.norm(), mnorm = M.norm();
    for (int it = 0; it < 1000 && !converged; ++it) {
      const Eigen::MatrixXd Y = ldlt.solve(M * X);
      Eigen::MatrixXd Kr = Y.transpose() * (K * Y);
      Eigen::MatrixXd Mr = Y.transpose() * (M * Y);
      Kr = 0.5 * (Kr + Kr.transpose()).eval();
      Mr = 0.5 * (Mr + Mr.transpose()).eval();
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> small(Kr, Mr);
      if (small.info() != Eigen::Success) throw NumericalError("neumann_spectrum: Rayleigh-Ritz step failed");
      X = Y * small.eigenvectors();
      vals = small.eigenvalues();
      converged = true;
      for (int c = 0; c < count && converged; ++c) {
        const Eigen::VectorXd Kx = K * X.col(c);
        const Eigen::VectorXd r = Kx - vals[c] * (M * X.col(c));
        if (r.norm() > 1e-10 * (knorm + std::abs(vals[c]) * mnorm) * X.col(c).norm()) converged = false;
      }
    }
    if (!converged) throw NumericalError("neumann_spectrum: subspace iteration did not converge");
    for (int c = 0; c < count; ++c) out.values.push_back(vals[c]);
    out.vectors = X.leftCols(count);
  }
  const double top = std::max(std::abs(out.values.back()), 1.0);
  for (auto& v : out.values)
    if (v < 0 && v > -1e-9 * top) v = 0.0;
  const Eigen::MatrixXd Mu = M * out.vectors;
  check_residuals(K, Mu, out.values, out.vectors, "neumann_spectrum");
  return out;
}

std::vector<double> neumann_spectrum(const Mesh& mesh, int count) { return neumann_eigenpairs(mesh, count).values; }

std::vector<Vec2> dof_positions(const Mesh& mesh) {
  int n = 0;
  const auto dof = mesh.dof_map(&n);
  std::vector<Vec2> pos(n);
  std::vector<char> set(n, 0);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    if (!set[dof[v]]) {
      pos[dof[v]] = mesh.vertices[v];
      set[dof[v]] = 1;
    }
  return pos;
}

InequalityCheck dirichlet_energy_check(const Mesh& mesh, const Eigen::VectorXd& f, double sigma1_SN,
                                       int steklov_marker, double tol) {
  const auto sys = assemble(mesh);
  if (f.size() != sys.n_dofs) throw ConfigurationError("dirichlet_energy_check: f must have one value per dof");
  const Eigen::VectorXd b = sys.boundary_mass_for({steklov_marker});
  if (!(b.sum() > 0)) throw ConfigurationError("dirichlet_energy_check: marker has no boundary");
  const double mean = b.dot(f) / b.sum();
  InequalityCheck out;
  out.lhs = f.dot(sys.stiffness * f);
  out.rhs = sigma1_SN * (b.array() * (f.array() - mean).square()).sum();
  out.holds = out.lhs >= (1.0 - tol) * out.rhs;
  return out;
}

InequalityCheck poincare_check(const Mesh& mesh, const Eigen::VectorXd& f, const std::vector<int>& V1,
                               const std::vector<int>& V2, double lambda1, double tol) {
  if (V1.empty() || V2.empty()) throw DomainError("poincare_check: triangle sets must be non-empty");
  std::vector<char> in1(mesh.triangles.size(), 0);
  for (int t : V1) {
    if (t < 0 || t >= static_cast<int>(mesh.triangles.size())) throw DomainError("poincare_check: bad triangle index");
    in1[t] = 1;
  }
  for (int t : V2) {
    if (t < 0 || t >= static_cast<int>(mesh.triangles.size())) throw DomainError("poincare_check: bad triangle index");
    if (in1[t]) throw DomainError("poincare_check: V1 and V2 must be disjoint");
  }
  const auto sys = assemble(mesh);
  if (f.size() != sys.n_dofs) throw ConfigurationError("poincare_check: f must have one value per dof");
  auto measure = [&](const std::vector<int>& V, double& mu, double& mean) {
    mu = 0.0;
    double integral = 0.0;
    for (int ti : V) {
      const auto& t = mesh.triangles[ti];
      const auto& p0 = mesh.vertices[t[0]];
      const auto& p1 = mesh.vertices[t[1]];
      const auto& p2 = mesh.vertices[t[2]];
      const double area = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]));
      mu += area;
      integral += area * (f[sys.dof[t[0]]] + f[sys.dof[t[1]]] + f[sys.dof[t[2]]]) / 3.0;
    }
    mean = integral / mu;
  };
  double mu1, m1, mu2, m2;
  measure(V1, mu1, m1);
  measure(V2, mu2, m2);
  InequalityCheck out;
  out.lhs = f.dot(sys.stiffness * f);
  out.rhs = 0.5 * lambda1 * std::min(mu1, mu2) * (m1 - m2) * (m1 - m2);
  out.holds = out.lhs >= (1.0 - tol) * out.rhs;
  return out;
}

ScalingCheck metric_scaling_ratio_check(const Mesh& mesh, double c) {
  if (!(c > 0)) throw ConfigurationError("metric_scaling_ratio_check: c must be positive");
  Mesh scaled = mesh;
  const double s = std::sqrt(c);
  for (auto& v : scaled.vertices) v = {s * v[0], s * v[1]};
  const auto a = steklov_spectrum(mesh, 6);
  const auto b = steklov_spectrum(scaled, 6);
  ScalingCheck out;
  out.expected = 1.0 / s;
  const double K = std::max(c, 1.0 / c);
  out.bound = std::pow(K, 2.5);
  for (int l = 1; l <= 5; ++l) {
    const double r = b[l] / a[l];
    out.ratios.push_back(r);
    if (std::abs(r - out.expected) > 1e-8 * out.expected) out.holds = false;
    if (r > out.bound || r < 1.0 / out.bound) out.holds = false;
  }
  return out;
}

void write_fem_csv(std::ostream& os, double eps, const std::vector<double>& values, const std::string& family,
                   bool header) {
  if (header) os << "eps,j,k,q,family,multiplicity,sigma,eps_sigma,eps_logeps_sigma\n";
  char buf[256];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g,,,,%s,1,%.17g,%.17g,%.17g\n", eps, family.c_str(), v, eps * v,
                  eps * std::abs(std::log(eps)) * v);
    os << buf;
  }
}

} // namespace steklov::fem
