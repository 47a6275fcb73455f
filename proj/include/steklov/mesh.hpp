#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

namespace steklov::fem {

using Vec2 = std::array<double, 2>;

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  int marker = 0;
};

// Markers used by the planar shapes.
constexpr int kInnerMarker = 0;
constexpr int kOuterMarker = 1;

/// Triangulated flat domain. Periodic meshes keep the image vertices that
/// triangles crossing a side of the fundamental square actually use, so
/// every triangle has its true flat geometry; `periodic` maps each image to
/// the vertex it is identified with.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles; // counterclockwise
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<std::pair<int, int>> periodic; // (image, original)

  // Vertex -> degree of freedom, after periodic identification.
  std::vector<int> dof_map(int* n_dofs = nullptr) const;
  int euler_characteristic() const;
  double area() const;
  double boundary_length(int marker) const;
  std::vector<int> markers() const; // sorted, distinct

  // Throws ConfigurationError on a broken invariant.
  void validate() const;
};

/// Flat torus [0, L)^2 minus the open disks of radius eps around `centers`.
/// Edge length is h out to radius 3 eps around each hole and then grows geometrically to h_max
/// (default: min(8h, L/20), never below h). Circle j carries marker j.
Mesh mesh_torus_minus_disks(double L, const std::vector<Vec2>& centers, double eps, double h, double h_max = 0.0);

struct Disk {
  double R = 1.0;
};
struct Annulus {
  double eps_in = 0.5;
  double eps_out = 1.0;
};
using PlanarShape = std::variant<Disk, Annulus>;

/// Quasi-uniform mesh with edge length about h. The disk boundary carries
/// kOuterMarker; the annulus carries kInnerMarker and kOuterMarker.
Mesh mesh_planar(const PlanarShape& shape, double h);

void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

} // namespace steklov::fem
