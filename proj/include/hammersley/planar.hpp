#pragma once

#include <cmath>

namespace hammersley {

/// Planar point; `t` is the vertical coordinate.
struct Point2 {
  double x = 0.0;
  double t = 0.0;
  bool operator==(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.t + b.t}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.t - b.t}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.t}; }

/// Componentwise partial order.
inline bool leq(Point2 a, Point2 b) { return a.x <= b.x && a.t <= b.t; }
inline bool strictly_below(Point2 a, Point2 b) { return a.x < b.x && a.t < b.t; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.t * b.t; }
inline double cross(Point2 a, Point2 b) { return a.x * b.t - a.t * b.x; }
inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.t * p.t); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Poisson point carrying its sampled weight.
struct MarkedPoint {
  double x = 0.0;
  double t = 0.0;
  double w = 0.0;
  Point2 pos() const { return {x, t}; }
  bool operator==(const MarkedPoint&) const = default;
};

/// Lexicographic (x, t) order; the total order used throughout.
inline bool lex_less(const MarkedPoint& a, const MarkedPoint& b) {
  return a.x < b.x || (a.x == b.x && a.t < b.t);
}

/// Closed axis-aligned rectangle [x0,x1] x [t0,t1].
struct Rect {
  double x0 = 0.0, x1 = 0.0, t0 = 0.0, t1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return t1 - t0; }
  double area() const { return width() * height(); }
  bool contains(Point2 p) const {
    return p.x >= x0 && p.x <= x1 && p.t >= t0 && p.t <= t1;
  }
  bool operator==(const Rect&) const = default;
};

/// Distance from p to the closed segment [a, b].
inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double s = dot(p - a, ab) / len2;
  s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
  return dist(p, a + s * ab);
}

/// Unsigned angle between two nonzero vectors, in [0, pi].
inline double angle_between(Point2 u, Point2 v) {
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

}  // namespace hammersley
