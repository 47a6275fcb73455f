#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "delaunay.hpp"
#include "steklov/errors.hpp"

namespace steklov::fem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRowFactor = 0.8660254037844386; // sqrt(3)/2
constexpr std::uint64_t kMeshSeed = 0x5eed5eedULL;

double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return detail::orient2d(a, b, c); }

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

double wrap(double x, double L) {
  double y = std::fmod(x, L);
  if (y < 0) y += L;
  if (y >= L) y -= L;
  return y;
}

double periodic_dist(const Vec2& a, const Vec2& b, double L) {
  double dx = std::abs(a[0] - b[0]), dy = std::abs(a[1] - b[1]);
  dx = std::min(dx, L - dx);
  dy = std::min(dy, L - dy);
  return std::hypot(dx, dy);
}

// Points on a circle; ring 0 is exact, others are staggered and jittered so
// that no four points are cocircular.
void add_ring(std::vector<Vec2>& pts, const Vec2& c, double r, int n, int index, double radial_jitter,
              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double step = kTwoPi / n;
  const double phase = (index % 2) * 0.5 * step;
  for (int k = 0; k < n; ++k) {
    double th = phase + k * step, rr = r;
    if (index > 0) {
      th += 0.04 * step * u(rng);
      rr += radial_jitter * u(rng);
    }
    pts.push_back({c[0] + rr * std::cos(th), c[1] + rr * std::sin(th)});
  }
}

// Edges used by exactly one triangle, keyed through `rep`, in triangle
// orientation.
std::vector<std::array<int, 2>> single_edges(const std::vector<std::array<int, 3>>& tris, const std::vector<int>& rep) {
  std::map<std::pair<int, int>, std::pair<int, std::array<int, 2>>> count;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      auto& e = count[edge_key(rep[a], rep[b])];
      ++e.first;
      e.second = {a, b};
    }
  std::vector<std::array<int, 2>> out;
  for (const auto& [key, v] : count)
    if (v.first == 1) out.push_back(v.second);
  return out;
}

} // namespace

std::vector<int> Mesh::dof_map(int* n_dofs) const {
  const int nv = static_cast<int>(vertices.size());
  std::vector<int> rep(nv);
  for (int i = 0; i < nv; ++i) rep[i] = i;
  for (const auto& [img, orig] : periodic) {
    if (img < 0 || img >= nv || orig < 0 || orig >= nv) throw ConfigurationError("mesh: periodic pair out of range");
    rep[img] = orig;
  }
  // Resolve chains image -> image -> original.
  for (int i = 0; i < nv; ++i) {
    int r = rep[i], guard = 0;
    while (rep[r] != r) {
      r = rep[r];
      if (++guard > nv) throw ConfigurationError("mesh: cyclic periodic identification");
    }
    rep[i] = r;
  }
  std::vector<int> dof(nv, -1);
  int next = 0;
  for (int i = 0; i < nv; ++i)
    if (rep[i] == i) dof[i] = next++;
  for (int i = 0; i < nv; ++i) dof[i] = dof[rep[i]];
  if (n_dofs) *n_dofs = next;
  return dof;
}

int Mesh::euler_characteristic() const {
  int V = 0;
  const auto dof = dof_map(&V);
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) edges[edge_key(dof[t[k]], dof[t[(k + 1) % 3]])] = 1;
  return V - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
}

double Mesh::area() const {
  double a = 0.0;
  for (const auto& t : triangles) a += 0.5 * orient(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return a;
}

double Mesh::boundary_length(int marker) const {
  double len = 0.0;
  for (const auto& e : boundary_edges)
    if (e.marker == marker) len += std::hypot(vertices[e.b][0] - vertices[e.a][0], vertices[e.b][1] - vertices[e.a][1]);
  return len;
}

std::vector<int> Mesh::markers() const {
  std::vector<int> m;
  for (const auto& e : boundary_edges) m.push_back(e.marker);
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

void Mesh::validate() const {
  const int nv = static_cast<int>(vertices.size());
  if (triangles.empty()) throw ConfigurationError("mesh: no triangles");
  std::vector<char> used(nv, 0);
  for (const auto& t : triangles) {
    for (int v : t) {
      if (v < 0 || v >= nv) throw ConfigurationError("mesh: triangle index out of range");
      used[v] = 1;
    }
    if (!(orient(vertices[t[0]], vertices[t[1]], vertices[t[2]]) > 0))
      throw ConfigurationError("mesh: triangle with non-positive area");
  }
  for (int i = 0; i < nv; ++i)
    if (!used[i]) throw ConfigurationError("mesh: hanging vertex " + std::to_string(i));

  const auto dof = dof_map();
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) ++count[edge_key(dof[t[k]], dof[t[(k + 1) % 3]])];
  std::map<std::pair<int, int>, int> marked;
  for (const auto& e : boundary_edges) {
    if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv) throw ConfigurationError("mesh: boundary edge out of range");
    if (e.marker < 0) throw ConfigurationError("mesh: negative boundary marker");
    if (++marked[edge_key(dof[e.a], dof[e.b])] > 1) throw ConfigurationError("mesh: boundary edge listed twice");
  }
  for (const auto& [key, c] : count) {
    if (c > 2) throw ConfigurationError("mesh: edge shared by more than two triangles");
    if ((c == 1) != (marked.count(key) == 1))
      throw ConfigurationError("mesh: boundary edges do not match the single-triangle edges");
  }
  for (const auto& [key, c] : marked)
    if (!count.count(key)) throw ConfigurationError("mesh: boundary edge not in any triangle");
}

Mesh mesh_torus_minus_disks(double L, const std::vector<Vec2>& centers, double eps, double h, double h_max) {
  if (!(L > 0 && eps > 0 && h > 0)) throw ConfigurationError("torus mesh: L, eps and h must be positive");
  if (centers.empty()) throw ConfigurationError("torus mesh: at least one disk is required");
  if (!(h < eps / 4)) throw ConfigurationError("torus mesh: h must be below eps/4");
  if (!(6.0 * eps < L)) throw ConfigurationError("torus mesh: disk too large for the torus");
  double min_sep = L;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double d = periodic_dist(centers[i], centers[j], L);
      if (!(d - 2 * eps > 4 * eps)) throw ConfigurationError("torus mesh: disks must be more than 4 eps apart");
      min_sep = std::min(min_sep, d);
    }
  if (h_max <= 0.0) h_max = std::min(8.0 * h, L / 20.0);
  h_max = std::max(h_max, h);

  std::mt19937_64 rng(kMeshSeed);
  std::vector<Vec2> pts;
  std::vector<Vec2> wrapped_centers;
  for (const auto& c : centers) wrapped_centers.push_back({wrap(c[0], L), wrap(c[1], L)});

  // Graded rings around each hole.
  // Edge length stays at h out to 3 eps, where the separated modes
  // (eps/r)^q still carry most of their energy, then grows.
  const double growth = 1.2;
  const double core = 3.0 * eps;
  const double r_cap = 0.5 * min_sep - 0.5 * h_max;
  double exclusion = 0.0;
  for (const auto& c : wrapped_centers) {
    double r = eps, s = h;
    add_ring(pts, c, r, static_cast<int>(std::ceil(kTwoPi * eps / h)), 0, 0.0, rng);
    int index = 1, at_max = 0;
    while (true) {
      const double s_next = r < core ? s : std::min(s * growth, h_max);
      const double r_next = r + 0.5 * (s + s_next) * kRowFactor;
      if (r_next + s_next > r_cap || r_next + s_next > 0.5 * L) break;
      add_ring(pts, c, r_next, std::max(6, static_cast<int>(std::lround(kTwoPi * r_next / s_next))), index++,
               0.05 * s_next, rng);
      r = r_next;
      s = s_next;
      if (s >= h_max && ++at_max >= 2) break;
    }
    exclusion = std::max(exclusion, r + 0.8 * s);
  }
  for (auto& p : pts) p = {wrap(p[0], L), wrap(p[1], L)};

  // Jittered triangular background lattice, periodic in both directions.
  const int nx = std::max(3, static_cast<int>(std::lround(L / h_max)));
  int ny = std::max(4, static_cast<int>(std::lround(L / (L / nx * kRowFactor))));
  if (ny % 2) ++ny;
  const double ax = L / nx, ay = L / ny;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double jit = 0.15 * std::min(ax, ay);
      const Vec2 p{wrap((i + 0.5 * (j % 2)) * ax + jit * u(rng), L), wrap(j * ay + jit * u(rng), L)};
      bool keep = true;
      for (const auto& c : wrapped_centers)
        if (periodic_dist(p, c, L) < exclusion) keep = false;
      if (keep) pts.push_back(p);
    }

  // Hole centers are auxiliary: they only break the cocircularity of the
  // hole polygon and are discarded with the hole triangles.
  const int n_real = static_cast<int>(pts.size());
  for (const auto& c : wrapped_centers) pts.push_back(c);
  const int n_base = static_cast<int>(pts.size());

  // Periodic images in a margin band.
  const double margin = 3.0 * h_max;
  std::vector<int> origin(n_base);
  for (int i = 0; i < n_base; ++i) origin[i] = i;
  std::vector<Vec2> all = pts;
  for (int i = 0; i < n_base; ++i)
    for (int sx = -1; sx <= 1; ++sx)
      for (int sy = -1; sy <= 1; ++sy) {
        if (sx == 0 && sy == 0) continue;
        const Vec2 q{pts[i][0] + sx * L, pts[i][1] + sy * L};
        if (q[0] >= -margin && q[0] < L + margin && q[1] >= -margin && q[1] < L + margin) {
          all.push_back(q);
          origin.push_back(i);
        }
      }

  const auto tris = detail::delaunay(all);
  std::vector<std::array<int, 3>> kept;
  for (const auto& t : tris) {
    bool aux = false;
    for (int v : t)
      if (origin[v] >= n_real) aux = true;
    if (aux) continue;
    const Vec2 g{(all[t[0]][0] + all[t[1]][0] + all[t[2]][0]) / 3, (all[t[0]][1] + all[t[1]][1] + all[t[2]][1]) / 3};
    if (g[0] < 0 || g[0] >= L || g[1] < 0 || g[1] >= L) continue;
    bool in_hole = false;
    for (const auto& c : wrapped_centers)
      if (periodic_dist(g, c, L) < eps) in_hole = true;
    if (!in_hole) kept.push_back(t);
  }

  // Compact: originals first (in point order), then the used images.
  std::vector<int> new_index(all.size(), -1);
  std::vector<char> used(all.size(), 0);
  for (const auto& t : kept)
    for (int v : t) {
      used[v] = 1;
      used[origin[v]] = 1;
    }
  Mesh mesh;
  for (int i = 0; i < n_base; ++i)
    if (used[i]) {
      new_index[i] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(all[i]);
    }
  for (std::size_t i = n_base; i < all.size(); ++i)
    if (used[i]) {
      new_index[i] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(all[i]);
      mesh.periodic.push_back({new_index[i], new_index[origin[i]]});
    }
  for (const auto& t : kept) mesh.triangles.push_back({new_index[t[0]], new_index[t[1]], new_index[t[2]]});

  int n_dofs = 0;
  const auto dof = mesh.dof_map(&n_dofs);
  for (const auto& e : single_edges(mesh.triangles, dof)) {
    const auto& a = mesh.vertices[e[0]];
    const auto& b = mesh.vertices[e[1]];
    const Vec2 mid{wrap(0.5 * (a[0] + b[0]), L), wrap(0.5 * (a[1] + b[1]), L)};
    int best = 0;
    for (std::size_t j = 1; j < wrapped_centers.size(); ++j)
      if (periodic_dist(mid, wrapped_centers[j], L) < periodic_dist(mid, wrapped_centers[best], L))
        best = static_cast<int>(j);
    if (periodic_dist(mid, wrapped_centers[best], L) > eps + h)
      throw NumericalError("torus mesh: periodic triangulation is not closed (stray boundary edge)");
    mesh.boundary_edges.push_back({e[0], e[1], best});
  }
  mesh.validate();
  const int expected_chi = -static_cast<int>(centers.size());
  if (mesh.euler_characteristic() != expected_chi)
    throw NumericalError("torus mesh: Euler characteristic " + std::to_string(mesh.euler_characteristic()) +
                         ", expected " + std::to_string(expected_chi));
  return mesh;
}

Mesh mesh_planar(const PlanarShape& shape, double h) {
  if (!(h > 0)) throw ConfigurationError("planar mesh: h must be positive");
  std::mt19937_64 rng(kMeshSeed);
  std::vector<Vec2> pts;
  const Vec2 origin{0.0, 0.0};
  const double dr = h * kRowFactor;
  double r_in = 0.0, r_out = 0.0;
  bool aux_center = false;

  if (const auto* d = std::get_if<Disk>(&shape)) {
    if (!(d->R > 0) || !(h < d->R / 4)) throw ConfigurationError("disk mesh: need R > 0 and h < R/4");
    r_out = d->R;
    const int K = std::max(1, static_cast<int>(std::lround(d->R / dr)));
    add_ring(pts, origin, d->R, static_cast<int>(std::ceil(kTwoPi * d->R / h)), 0, 0.0, rng);
    for (int i = 1; i < K; ++i) {
      const double r = d->R * (1.0 - static_cast<double>(i) / K);
      add_ring(pts, origin, r, std::max(6, static_cast<int>(std::lround(kTwoPi * r / h))), i, 0.05 * dr, rng);
    }
    pts.push_back(origin);
  } else {
    const auto& a = std::get<Annulus>(shape);
    if (!(a.eps_in > 0 && a.eps_in < a.eps_out)) throw ConfigurationError("annulus mesh: need 0 < eps_in < eps_out");
    if (!(h < std::min(a.eps_in, a.eps_out - a.eps_in) / 4))
      throw ConfigurationError("annulus mesh: h must be below a quarter of the smallest feature");
    r_in = a.eps_in;
    r_out = a.eps_out;
    const int K = std::max(2, static_cast<int>(std::lround((a.eps_out - a.eps_in) / dr)));
    for (int i = 0; i <= K; ++i) {
      const double r = a.eps_in + (a.eps_out - a.eps_in) * i / K;
      const bool edge = i == 0 || i == K;
      const int n = edge ? static_cast<int>(std::ceil(kTwoPi * r / h))
                         : std::max(6, static_cast<int>(std::lround(kTwoPi * r / h)));
      add_ring(pts, origin, r, n, edge ? 0 : (i % 2 ? 1 : 2), edge ? 0.0 : 0.05 * dr, rng);
    }
    pts.push_back(origin);
    aux_center = true;
  }

  const int n_real = aux_center ? static_cast<int>(pts.size()) - 1 : static_cast<int>(pts.size());
  const auto tris = detail::delaunay(pts);
  Mesh mesh;
  std::vector<int> new_index(pts.size(), -1);
  for (const auto& t : tris) {
    if (t[0] >= n_real || t[1] >= n_real || t[2] >= n_real) continue;
    const double gx = (pts[t[0]][0] + pts[t[1]][0] + pts[t[2]][0]) / 3;
    const double gy = (pts[t[0]][1] + pts[t[1]][1] + pts[t[2]][1]) / 3;
    const double gr = std::hypot(gx, gy);
    if (gr < r_in || gr > r_out) continue;
    std::array<int, 3> nt{};
    for (int k = 0; k < 3; ++k) {
      if (new_index[t[k]] < 0) {
        new_index[t[k]] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(pts[t[k]]);
      }
      nt[k] = new_index[t[k]];
    }
    mesh.triangles.push_back(nt);
  }
  std::vector<int> identity(mesh.vertices.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  const double split = 0.5 * (r_in + r_out);
  for (const auto& e : single_edges(mesh.triangles, identity)) {
    const auto& a = mesh.vertices[e[0]];
    const auto& b = mesh.vertices[e[1]];
    const double rm = std::hypot(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]));
    mesh.boundary_edges.push_back({e[0], e[1], (aux_center && rm < split) ? kInnerMarker : kOuterMarker});
  }
  mesh.validate();
  const int expected_chi = aux_center ? 0 : 1;
  if (mesh.euler_characteristic() != expected_chi)
    throw NumericalError("planar mesh: unexpected Euler characteristic " + std::to_string(mesh.euler_characteristic()));
  return mesh;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  char buf[128];
  os << mesh.vertices.size() << ' ' << mesh.triangles.size() << ' ' << mesh.boundary_edges.size() << '\n';
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v[0], v[1]);
    os << buf;
  }
  for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) os << e.a << ' ' << e.b << ' ' << e.marker << '\n';
  if (!mesh.periodic.empty()) {
    os << "periodic " << mesh.periodic.size() << '\n';
    for (const auto& [img, orig] : mesh.periodic) os << img << ' ' << orig << '\n';
  }
}

Mesh read_mesh(std::istream& is) {
  Mesh mesh;
  std::size_t nv = 0, nt = 0, nbe = 0;
  if (!(is >> nv >> nt >> nbe)) throw ConfigurationError("mesh file: bad header");
  mesh.vertices.resize(nv);
  mesh.triangles.resize(nt);
  mesh.boundary_edges.resize(nbe);
  for (auto& v : mesh.vertices)
    if (!(is >> v[0] >> v[1])) throw ConfigurationError("mesh file: bad vertex line");
  for (auto& t : mesh.triangles)
    if (!(is >> t[0] >> t[1] >> t[2])) throw ConfigurationError("mesh file: bad triangle line");
  for (auto& e : mesh.boundary_edges)
    if (!(is >> e.a >> e.b >> e.marker)) throw ConfigurationError("mesh file: bad boundary edge line");
  std::string word;
  if (is >> word) {
    if (word != "periodic") throw ConfigurationError("mesh file: unexpected section '" + word + "'");
    std::size_t np = 0;
    if (!(is >> np)) throw ConfigurationError("mesh file: bad periodic header");
    mesh.periodic.resize(np);
    for (auto& p : mesh.periodic)
      if (!(is >> p.first >> p.second)) throw ConfigurationError("mesh file: bad periodic line");
  }
  mesh.validate();
  return mesh;
}

} // namespace steklov::fem
