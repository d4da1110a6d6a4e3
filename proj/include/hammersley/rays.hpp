#pragma once

#include <optional>
#include <vector>

#include "hammersley/lpp.hpp"
#include "hammersley/planar.hpp"
#include "hammersley/point_cloud.hpp"

namespace hammersley {

/// Finite-radius approximation of a semi-infinite geodesic toward direction
/// alpha: geodesics from `start` to the targets R (cos a, sin a) along an
/// increasing radius schedule, with the prefix shared by the last two radii
/// as the stabilized part.
struct RayApproximation {
  Point2 start;
  double alpha = 0.0;
  std::vector<double> radii;
  std::vector<Geodesic> prefixes;         // one geodesic per radius
  std::vector<MarkedPoint> stable_prefix; // shared prefix of the last two
  bool stabilized = false;                // agreement within radii.back()/4
  const PointCloud* cloud = nullptr;
};

/// Busemann increment between x and y at their coalescence point c:
/// value = L(c..y) - L(c..x), both passage times computed on one cloud.
struct BusemannSample {
  double alpha = 0.0;
  Point2 x, y;
  MarkedPoint coalescence;
  double value = 0.0;
};

RayApproximation approx_alpha_ray(const PointCloud& cloud, Point2 start,
                                  double alpha, std::vector<double> radii);

/// First marked point after which the two stable prefixes are identical as
/// sequences; nullopt if they never merge within the stable window. The rays
/// must come from the same cloud with the same alpha and radii.
std::optional<MarkedPoint> coalescence_point(const RayApproximation& a,
                                             const RayApproximation& b);

std::optional<BusemannSample> busemann(const PointCloud& cloud, double alpha,
                                       Point2 x, Point2 y,
                                       std::vector<double> radii);

/// Same, reusing already-computed rays.
std::optional<BusemannSample> busemann_from_rays(const RayApproximation& from_x,
                                                 const RayApproximation& from_y);

}  // namespace hammersley
