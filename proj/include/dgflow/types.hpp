#pragma once

#include <Eigen/Core>

namespace dgflow {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Signed twice-area of the triangle (a, b, c); positive when counterclockwise.
inline double cross2(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

inline double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross2(b - a, c - a);
}

}  // namespace dgflow
