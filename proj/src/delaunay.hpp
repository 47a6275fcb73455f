#pragma once

#include <array>
#include <vector>

namespace steklov::detail {

using Point = std::array<double, 2>;

// Delaunay triangulation of a point set (Bowyer-Watson with a walking point
// locator). Returns counterclockwise triangles over the input indices.
// Duplicate points are not allowed.
std::vector<std::array<int, 3>> delaunay(const std::vector<Point>& pts);

double orient2d(const Point& a, const Point& b, const Point& c);

} // namespace steklov::detail
