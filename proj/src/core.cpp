#include "steklov/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr double kDistinctRelTol = 1e-12;

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Groups a sorted list of eigenvalues into distinct values with counts.
std::vector<TransverseEigenvalue> group_sorted(const std::vector<double>& values) {
  std::vector<TransverseEigenvalue> out;
  for (double v : values) {
    if (!out.empty() && close_rel(out.back().lambda, v, kDistinctRelTol)) {
      ++out.back().multiplicity;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

std::vector<TransverseEigenvalue> torus_spectrum(const std::vector<double>& sides, int count) {
  const int n = static_cast<int>(sides.size());
  const double max_side = *std::max_element(sides.begin(), sides.end());
  for (int box = 2;; box *= 2) {
    std::vector<double> values;
    std::vector<int> idx(n, -box);
    // Odometer over the box [-box, box]^n.
    while (true) {
      double lambda = 0.0;
      for (int i = 0; i < n; ++i) {
        const double w = 2.0 * std::numbers::pi * idx[i] / sides[i];
        lambda += w * w;
      }
      values.push_back(lambda);
      int pos = 0;
      while (pos < n && idx[pos] == box) {
        idx[pos] = -box;
        ++pos;
      }
      if (pos == n) break;
      ++idx[pos];
    }
    std::sort(values.begin(), values.end());
    // Any lattice point outside the box has some |k_i| > box.
    const double w_out = 2.0 * std::numbers::pi * (box + 1) / max_side;
    const double certified = w_out * w_out;
    auto grouped = group_sorted(values);
    std::vector<TransverseEigenvalue> out;
    for (const auto& e : grouped) {
      if (e.lambda >= certified * (1.0 - kDistinctRelTol)) break;
      out.push_back(e);
      if (static_cast<int>(out.size()) == count) return out;
    }
    if (box > (1 << 12)) throw NumericalError("transverse_spectrum: flat torus enumeration did not converge");
  }
}

} // namespace

SubmanifoldSpec SubmanifoldSpec::point() { return {0, 1.0, PointKind{}}; }

SubmanifoldSpec SubmanifoldSpec::circle(double length) { return {1, length, CircleKind{length}}; }

SubmanifoldSpec SubmanifoldSpec::round_sphere(int dim, double radius) {
  return {dim, sphere_volume(dim) * std::pow(radius, dim), RoundSphereKind{dim, radius}};
}

SubmanifoldSpec SubmanifoldSpec::flat_torus(std::vector<double> sides) {
  const int dim = static_cast<int>(sides.size());
  const double vol = std::accumulate(sides.begin(), sides.end(), 1.0, std::multiplies<>());
  return {dim, vol, FlatTorusKind{std::move(sides)}};
}

void SubmanifoldSpec::validate() const {
  if (dim < 0) throw ConfigurationError("submanifold dimension must be non-negative");
  if (!(volume > 0.0) || !std::isfinite(volume)) throw ConfigurationError("submanifold volume must be positive");
  // Volumes read from files are often rounded.
  constexpr double vol_tol = 1e-6;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PointKind>) {
          if (dim != 0 || volume != 1.0) throw ConfigurationError("a point has dim 0 and volume 1");
        } else if constexpr (std::is_same_v<K, CircleKind>) {
          if (dim != 1) throw ConfigurationError("a circle has dim 1");
          if (!(k.length > 0.0)) throw ConfigurationError("circle length must be positive");
          if (!close_rel(volume, k.length, vol_tol)) throw ConfigurationError("circle volume must equal its length");
        } else if constexpr (std::is_same_v<K, RoundSphereKind>) {
          if (k.dim < 1 || dim != k.dim) throw ConfigurationError("round sphere dimension mismatch");
          if (!(k.radius > 0.0)) throw ConfigurationError("sphere radius must be positive");
          if (!close_rel(volume, sphere_volume(k.dim) * std::pow(k.radius, k.dim), vol_tol))
            throw ConfigurationError("round sphere volume disagrees with its radius");
        } else {
          if (k.sides.empty() || dim != static_cast<int>(k.sides.size()))
            throw ConfigurationError("flat torus dimension must equal the number of sides");
          double vol = 1.0;
          for (double s : k.sides) {
            if (!(s > 0.0)) throw ConfigurationError("flat torus sides must be positive");
            vol *= s;
          }
          if (!close_rel(volume, vol, vol_tol)) throw ConfigurationError("flat torus volume disagrees with its sides");
        }
      },
      kind);
}

int ExcisionScenario::sphere_dim(int j) const { return m - submanifolds.at(j).dim - 1; }

void ExcisionScenario::validate() const {
  if (m < 2) throw ConfigurationError("ambient dimension m must be at least 2");
  if (submanifolds.empty()) throw ConfigurationError("scenario needs at least one submanifold");
  if (!(lambda1_M > 0.0)) throw ConfigurationError("lambda1_M must be positive");
  for (std::size_t j = 0; j < submanifolds.size(); ++j) {
    submanifolds[j].validate();
    if (submanifolds[j].dim > m - 2) {
      std::ostringstream os;
      os << "submanifold " << j << " has codimension < 2 (dim " << submanifolds[j].dim << ", m " << m << ")";
      throw ConfigurationError(os.str());
    }
  }
  for (double s : separations)
    if (!(s > 0.0)) throw ConfigurationError("separations must be positive");
}

std::string to_string(BoundaryFamily family) {
  switch (family) {
  case BoundaryFamily::SteklovNeumann:
    return "SN";
  case BoundaryFamily::SteklovDirichlet:
    return "SD";
  case BoundaryFamily::Steklov:
    return "Steklov";
  }
  return "?";
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double sphere_eigenvalue(int d, int i) { return static_cast<double>(i) * (i + d - 1); }

std::int64_t sphere_multiplicity(int d, int i) { return binomial(d + i, d) - binomial(d + i - 2, d); }

int cluster_index(int d, std::int64_t p) {
  if (p <= 0) return 0;
  std::int64_t cumulative = 0;
  for (int q = 0;; ++q) {
    cumulative += sphere_multiplicity(d, q);
    if (p < cumulative) return q;
  }
}

double sphere_volume(int d) {
  const double h = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

std::vector<TransverseEigenvalue> transverse_spectrum(const SubmanifoldSpec& spec, int count) {
  if (count < 1) throw ConfigurationError("transverse_spectrum: count must be positive");
  return std::visit(
      [&](const auto& k) -> std::vector<TransverseEigenvalue> {
        using K = std::decay_t<decltype(k)>;
        std::vector<TransverseEigenvalue> out;
        if constexpr (std::is_same_v<K, PointKind>) {
          out.push_back({0.0, 1});
        } else if constexpr (std::is_same_v<K, CircleKind>) {
          for (int i = 0; i < count; ++i) {
            const double w = 2.0 * std::numbers::pi * i / k.length;
            out.push_back({w * w, i == 0 ? 1 : 2});
          }
        } else if constexpr (std::is_same_v<K, RoundSphereKind>) {
          const double r2 = k.radius * k.radius;
          for (int i = 0; i < count; ++i)
            out.push_back({sphere_eigenvalue(k.dim, i) / r2, sphere_multiplicity(k.dim, i)});
        } else {
          out = torus_spectrum(k.sides, count);
        }
        return out;
      },
      spec.kind);
}

} // namespace steklov
