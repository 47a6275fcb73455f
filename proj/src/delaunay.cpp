#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "steklov/errors.hpp"

namespace steklov::detail {

double orient2d(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

namespace {

// > 0 when d lies strictly inside the circumcircle of counterclockwise abc.
double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return ad * (bdx * cdy - cdx * bdy) + bd * (cdx * ady - adx * cdy) + cd * (adx * bdy - bdx * ady);
}

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  const std::uint32_t n = 1u << order;
  std::uint64_t d = 0;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

struct Tri {
  int v[3];
  int n[3]; // n[i] is the neighbour across the edge opposite v[i]
  bool alive;
};

class Triangulator {
public:
  explicit Triangulator(std::vector<Point> pts) : p_(std::move(pts)), n_(static_cast<int>(p_.size())) {}

  std::vector<std::array<int, 3>> run() {
    add_super_triangle();
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    spatial_sort(order);
    stamp_.assign(tris_.capacity() + 16, 0);
    start_at_.assign(n_ + 3, -1);
    end_at_.assign(n_ + 3, -1);
    for (int i : order) insert(i);

    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_)
      if (t.alive && t.v[0] < n_ && t.v[1] < n_ && t.v[2] < n_) out.push_back({t.v[0], t.v[1], t.v[2]});
    return out;
  }

private:
  std::vector<Point> p_;
  int n_;
  std::vector<Tri> tris_;
  std::vector<int> free_;
  std::vector<int> stamp_;
  int cur_stamp_ = 0;
  int last_ = 0;
  std::vector<int> start_at_, end_at_;

  void add_super_triangle() {
    double xmin = p_[0][0], xmax = xmin, ymin = p_[0][1], ymax = ymin;
    for (const auto& q : p_) {
      xmin = std::min(xmin, q[0]);
      xmax = std::max(xmax, q[0]);
      ymin = std::min(ymin, q[1]);
      ymax = std::max(ymax, q[1]);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double D = std::max({xmax - xmin, ymax - ymin, 1e-12});
    p_.push_back({cx - 20 * D, cy - 10 * D});
    p_.push_back({cx + 20 * D, cy - 10 * D});
    p_.push_back({cx, cy + 20 * D});
    tris_.reserve(2 * n_ + 16);
    tris_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}, true});
  }

  void spatial_sort(std::vector<int>& order) const {
    double xmin = p_[0][0], xmax = xmin, ymin = p_[0][1], ymax = ymin;
    for (int i = 0; i < n_; ++i) {
      xmin = std::min(xmin, p_[i][0]);
      xmax = std::max(xmax, p_[i][0]);
      ymin = std::min(ymin, p_[i][1]);
      ymax = std::max(ymax, p_[i][1]);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
    const int order_bits = 16;
    const double scale = ((1u << order_bits) - 1) / span;
    std::vector<std::uint64_t> key(n_);
    for (int i = 0; i < n_; ++i)
      key[i] = hilbert_index(static_cast<std::uint32_t>((p_[i][0] - xmin) * scale),
                             static_cast<std::uint32_t>((p_[i][1] - ymin) * scale), order_bits);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
  }

  bool contains(int t, const Point& q) const {
    const Tri& T = tris_[t];
    for (int k = 0; k < 3; ++k)
      if (orient2d(p_[T.v[(k + 1) % 3]], p_[T.v[(k + 2) % 3]], q) < 0) return false;
    return true;
  }

  int locate(const Point& q) {
    int t = last_;
    if (!tris_[t].alive) t = 0;
    while (!tris_[t].alive) ++t;
    const int limit = 4 * static_cast<int>(std::sqrt(static_cast<double>(tris_.size()))) + 1000;
    unsigned rot = 0;
    for (int step = 0; step < limit; ++step) {
      const Tri& T = tris_[t];
      bool moved = false;
      for (int kk = 0; kk < 3; ++kk) {
        const int k = static_cast<int>((kk + rot) % 3);
        if (orient2d(p_[T.v[(k + 1) % 3]], p_[T.v[(k + 2) % 3]], q) < 0 && T.n[k] >= 0) {
          t = T.n[k];
          moved = true;
          break;
        }
      }
      ++rot;
      if (!moved) return t;
    }
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s)
      if (tris_[s].alive && contains(s, q)) return s;
    throw NumericalError("delaunay: point location failed");
  }

  int new_tri(const Tri& t) {
    if (!free_.empty()) {
      const int i = free_.back();
      free_.pop_back();
      tris_[i] = t;
      return i;
    }
    tris_.push_back(t);
    if (stamp_.size() < tris_.size()) stamp_.resize(2 * tris_.size(), 0);
    return static_cast<int>(tris_.size()) - 1;
  }

  void insert(int pi) {
    const Point& q = p_[pi];
    const int t0 = locate(q);
    ++cur_stamp_;
    std::vector<int> cavity{t0};
    stamp_[t0] = cur_stamp_;
    for (std::size_t i = 0; i < cavity.size(); ++i) {
      const Tri& T = tris_[cavity[i]];
      for (int k = 0; k < 3; ++k) {
        const int nb = T.n[k];
        if (nb < 0 || stamp_[nb] == cur_stamp_) continue;
        const Tri& N = tris_[nb];
        if (incircle(p_[N.v[0]], p_[N.v[1]], p_[N.v[2]], q) > 0) {
          stamp_[nb] = cur_stamp_;
          cavity.push_back(nb);
        }
      }
    }

    // Boundary of the cavity; grow it until every boundary edge sees q
    // strictly on its left, so the new fan is valid.
    struct Edge {
      int a, b, outside;
    };
    std::vector<Edge> boundary;
    while (true) {
      boundary.clear();
      int grow = -1;
      for (int c : cavity) {
        const Tri& T = tris_[c];
        for (int k = 0; k < 3; ++k) {
          const int nb = T.n[k];
          if (nb >= 0 && stamp_[nb] == cur_stamp_) continue;
          const int a = T.v[(k + 1) % 3], b = T.v[(k + 2) % 3];
          if (orient2d(p_[a], p_[b], q) <= 0) {
            if (nb < 0) throw NumericalError("delaunay: point outside the enclosing triangle");
            grow = nb;
            break;
          }
          boundary.push_back({a, b, nb});
        }
        if (grow >= 0) break;
      }
      if (grow < 0) break;
      stamp_[grow] = cur_stamp_;
      cavity.push_back(grow);
    }

    for (int c : cavity) {
      tris_[c].alive = false;
      free_.push_back(c);
    }
    std::vector<int> created;
    created.reserve(boundary.size());
    for (const auto& e : boundary) {
      const int t = new_tri({{e.a, e.b, pi}, {-1, -1, e.outside}, true});
      created.push_back(t);
      start_at_[e.a] = t;
      end_at_[e.b] = t;
      if (e.outside >= 0) {
        Tri& O = tris_[e.outside];
        for (int k = 0; k < 3; ++k)
          if (O.v[(k + 1) % 3] == e.b && O.v[(k + 2) % 3] == e.a) O.n[k] = t;
      }
    }
    for (int t : created) {
      Tri& T = tris_[t];
      T.n[0] = start_at_[T.v[1]]; // edge (b, q) is shared with the fan triangle starting at b
      T.n[1] = end_at_[T.v[0]];   // edge (q, a) with the one ending at a
    }
    last_ = created.front();
  }
};

} // namespace

std::vector<std::array<int, 3>> delaunay(const std::vector<Point>& pts) {
  if (pts.size() < 3) throw ConfigurationError("delaunay: need at least 3 points");
  return Triangulator(pts).run();
}

} // namespace steklov::detail
