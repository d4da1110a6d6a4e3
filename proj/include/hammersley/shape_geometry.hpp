#pragma once

#include <vector>

#include "hammersley/lpp.hpp"
#include "hammersley/planar.hpp"

namespace hammersley {

/// Limit shape f(x,t) = gamma * sqrt(x t); gamma is a plug-in constant
/// (user-supplied or estimated).
struct ShapeFunction {
  double gamma = 1.0;
  double value(double x, double t) const;
  double value(Point2 p) const { return value(p.x, p.t); }
};

ShapeFunction make_shape(double gamma);

/// f(q) - f(q - p) - f(p) for 0 <= p <= q; nonnegative, zero exactly on rays
/// through the origin.
double curvature_gap(const ShapeFunction& f, Point2 p, Point2 q);

/// Cone with apex `apex`, axis along the ray from the origin through
/// `axis_through` (translated to the apex), and the given half angle.
struct Cone {
  Point2 apex;
  Point2 axis_through;
  double half_angle = 0.0;
};

Cone make_cone(Point2 apex, Point2 axis_through, double half_angle);

/// True iff the angle between q - apex and the axis direction is at most the
/// half angle; the apex itself is contained.
bool cone_contains(const Cone& cone, Point2 q);

/// Truncated cylinder around the line through 0 and `anchor`: the side edges
/// are the points q >= anchor with |q| <= 2|anchor| at distance `width` from
/// that line.
struct TruncatedCylinder {
  Point2 anchor;
  double width = 0.0;
};

TruncatedCylinder make_cylinder(Point2 anchor, double width);

/// Evenly spaced points along each feasible side edge (`samples` per side);
/// empty if the constraints admit no points.
std::vector<Point2> cylinder_side_edge_points(const TruncatedCylinder& cyl,
                                              int samples);

/// Maximum distance from the chain points to the straight segment joining
/// the geodesic's endpoints.
double transversal_deviation(const Geodesic& geo);

}  // namespace hammersley
