#include "hammersley/shape_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hammersley {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

double ShapeFunction::value(double x, double t) const {
  require(x >= 0.0 && t >= 0.0, "shape function: needs x, t >= 0");
  return gamma * std::sqrt(x * t);
}

ShapeFunction make_shape(double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "shape: gamma must be > 0");
  return ShapeFunction{gamma};
}

double curvature_gap(const ShapeFunction& f, Point2 p, Point2 q) {
  require(p.x >= 0.0 && p.t >= 0.0, "curvature gap: p must be >= 0");
  require(leq(p, q), "curvature gap: p must be componentwise <= q");
  return f.value(q) - f.value(q - p) - f.value(p);
}

Cone make_cone(Point2 apex, Point2 axis_through, double half_angle) {
  require(axis_through.x > 0.0 && axis_through.t > 0.0,
          "cone: axis direction must have positive coordinates");
  require(half_angle > 0.0 && half_angle < std::numbers::pi / 4.0,
          "cone: half angle must lie in (0, pi/4)");
  return Cone{apex, axis_through, half_angle};
}

bool cone_contains(const Cone& cone, Point2 q) {
  const Point2 v = q - cone.apex;
  if (v.x == 0.0 && v.t == 0.0) return true;
  return angle_between(v, cone.axis_through) <= cone.half_angle;
}

TruncatedCylinder make_cylinder(Point2 anchor, double width) {
  require(anchor.x > 0.0 || anchor.t > 0.0, "cylinder: anchor must be nonzero");
  require(width > 0.0, "cylinder: width must be > 0");
  return TruncatedCylinder{anchor, width};
}

std::vector<Point2> cylinder_side_edge_points(const TruncatedCylinder& cyl,
                                              int samples) {
  require(samples >= 2, "cylinder edge: need at least 2 samples");
  const double pn = norm(cyl.anchor);
  const double L = cyl.width;
  std::vector<Point2> out;
  if (L >= 2.0 * pn) return out;  // |q| <= 2|p| already impossible

  const Point2 axis{cyl.anchor.x / pn, cyl.anchor.t / pn};
  const double s_max = std::sqrt(4.0 * pn * pn - L * L);

  // q = s * axis + sign * L * normal, with normal = (-axis.t, axis.x)
  for (double sign : {+1.0, -1.0}) {
    const Point2 n{-sign * axis.t, sign * axis.x};
    // componentwise q >= anchor pins the admissible s range from below
    double s_min = -std::numeric_limits<double>::infinity();
    if (axis.x > 0.0)
      s_min = std::max(s_min, (cyl.anchor.x - L * n.x) / axis.x);
    else if (L * n.x < cyl.anchor.x)
      continue;
    if (axis.t > 0.0)
      s_min = std::max(s_min, (cyl.anchor.t - L * n.t) / axis.t);
    else if (L * n.t < cyl.anchor.t)
      continue;
    if (!(s_min <= s_max)) continue;
    for (int k = 0; k < samples; ++k) {
      const double s =
          s_min + (s_max - s_min) * double(k) / double(samples - 1);
      out.push_back({s * axis.x + L * n.x, s * axis.t + L * n.t});
    }
  }
  return out;
}

double transversal_deviation(const Geodesic& geo) {
  double worst = 0.0;
  for (const MarkedPoint& p : geo.chain)
    worst = std::max(worst,
                     point_segment_distance(p.pos(), geo.start, geo.end));
  return worst;
}

}  // namespace hammersley
