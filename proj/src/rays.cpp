#include "hammersley/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hammersley {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Point2 ray_target(double alpha, double radius) {
  return {radius * std::cos(alpha), radius * std::sin(alpha)};
}
}  // namespace

RayApproximation approx_alpha_ray(const PointCloud& cloud, Point2 start,
                                  double alpha, std::vector<double> radii) {
  require(alpha > 0.0 && alpha < std::numbers::pi / 2.0,
          "ray: alpha must lie in (0, pi/2)");
  require(radii.size() >= 2, "ray: need at least 2 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0, "ray: radii must be positive");
    require(i == 0 || radii[i - 1] < radii[i],
            "ray: radii must be strictly increasing");
  }

  RayApproximation ray;
  ray.start = start;
  ray.alpha = alpha;
  ray.radii = std::move(radii);
  ray.cloud = &cloud;
  ray.prefixes.reserve(ray.radii.size());
  for (double r : ray.radii) {
    const Point2 target = ray_target(alpha, r);
    require(cloud.region().contains(target),
            "ray: target outside the cloud region");
    require(leq(start, target), "ray: target does not dominate the start");
    ray.prefixes.push_back(lowest_geodesic(cloud, start, target));
  }

  const auto& a = ray.prefixes[ray.prefixes.size() - 2].chain;
  const auto& b = ray.prefixes.back().chain;
  const std::size_t common = [&] {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }();
  ray.stable_prefix.assign(a.begin(), a.begin() + std::ptrdiff_t(common));

  // stabilized when the two final geodesics agree on every chain point
  // within radii.back()/4 of the start
  const double window = ray.radii.back() / 4.0;
  auto in_window_count = [&](const std::vector<MarkedPoint>& chain) {
    std::size_t n = 0;
    while (n < chain.size() && dist(chain[n].pos(), start) <= window) ++n;
    return n;
  };
  const std::size_t wa = in_window_count(a), wb = in_window_count(b);
  ray.stabilized = (wa == wb) && (common >= wa);
  return ray;
}

std::optional<MarkedPoint> coalescence_point(const RayApproximation& a,
                                             const RayApproximation& b) {
  require(a.cloud == b.cloud && a.cloud != nullptr,
          "coalescence: rays must come from the same cloud");
  require(a.alpha == b.alpha, "coalescence: rays must share alpha");
  require(a.radii == b.radii, "coalescence: rays must share the radii");

  const auto& sa = a.stable_prefix;
  const auto& sb = b.stable_prefix;
  std::size_t k = 0;  // longest common suffix length
  while (k < sa.size() && k < sb.size() &&
         sa[sa.size() - 1 - k] == sb[sb.size() - 1 - k])
    ++k;
  if (k == 0) return std::nullopt;
  return sa[sa.size() - k];
}

std::optional<BusemannSample> busemann_from_rays(
    const RayApproximation& from_x, const RayApproximation& from_y) {
  const auto c = coalescence_point(from_x, from_y);
  if (!c) return std::nullopt;
  const PointCloud& cloud = *from_x.cloud;
  BusemannSample sample;
  sample.alpha = from_x.alpha;
  sample.x = from_x.start;
  sample.y = from_y.start;
  sample.coalescence = *c;
  // L requires ordered endpoints; c dominates both starts, so L(c, .) reads
  // as the passage time between the start and c.
  sample.value = last_passage(cloud, from_y.start, c->pos()) -
                 last_passage(cloud, from_x.start, c->pos());
  return sample;
}

std::optional<BusemannSample> busemann(const PointCloud& cloud, double alpha,
                                       Point2 x, Point2 y,
                                       std::vector<double> radii) {
  const RayApproximation rx = approx_alpha_ray(cloud, x, alpha, radii);
  const RayApproximation ry = approx_alpha_ray(cloud, y, alpha, radii);
  return busemann_from_rays(rx, ry);
}

}  // namespace hammersley
