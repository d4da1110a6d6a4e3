#include "hammersley/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hammersley/rng.hpp"

namespace hammersley {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_region(const Rect& r) {
  require(std::isfinite(r.x0) && std::isfinite(r.x1) && std::isfinite(r.t0) &&
              std::isfinite(r.t1),
          "region: coordinates must be finite");
  require(r.width() > 0.0 && r.height() > 0.0,
          "region: degenerate (zero-area) regions are not allowed");
}
}  // namespace

PointCloud PointCloud::sample(Rect region, double intensity,
                              const WeightLaw& law, std::uint64_t seed) {
  validate_region(region);
  require(std::isfinite(intensity) && intensity > 0.0,
          "intensity must be > 0");

  RngStream rng(seed);
  const double height = region.height();
  const double rate = intensity * height;  // 1d rate of the x-projection

  std::vector<MarkedPoint> pts;
  pts.reserve(std::size_t(intensity * region.area() * 1.05) + 16);
  // Exponential spacings give the x-coordinates already sorted.
  double x = region.x0;
  for (;;) {
    x += rng.next_exponential(rate);
    if (!(x <= region.x1)) break;
    const double t = region.t0 + rng.next_unit() * height;
    pts.push_back({x, t, law.sample(rng)});
  }

  // Equal consecutive x (an ulp-level accident) only needs a local t-order
  // fix to restore strict lex order.
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i - 1].x == pts[i].x && pts[i - 1].t > pts[i].t)
      std::swap(pts[i - 1].t, pts[i].t);
  }
  return PointCloud(region, std::move(pts), seed);
}

PointCloud PointCloud::from_points(Rect region, std::vector<MarkedPoint> points,
                                   std::uint64_t seed) {
  validate_region(region);
  std::sort(points.begin(), points.end(), lex_less);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const MarkedPoint& p = points[i];
    require(std::isfinite(p.x) && std::isfinite(p.t) && p.w >= 0.0,
            "point: coordinates must be finite and weight >= 0");
    require(region.contains(p.pos()), "point: outside the region");
    require(i == 0 || points[i - 1].x != p.x || points[i - 1].t != p.t,
            "point: duplicate (x, t) location");
  }
  return PointCloud(region, std::move(points), seed);
}

std::string PointCloud::dump() const {
  std::string out;
  out.reserve(64 + points_.size() * 72);
  char line[128];
  std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g %llu %zu\n",
                region_.x0, region_.x1, region_.t0, region_.t1,
                static_cast<unsigned long long>(seed_), points_.size());
  out += line;
  for (const MarkedPoint& p : points_) {
    std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", p.x, p.t, p.w);
    out += line;
  }
  return out;
}

PointCloud PointCloud::parse_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  Rect region;
  unsigned long long seed = 0;
  std::size_t n = 0;
  if (!(in >> region.x0 >> region.x1 >> region.t0 >> region.t1 >> seed >> n))
    throw std::invalid_argument("cloud dump: malformed header");
  std::vector<MarkedPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> pts[i].x >> pts[i].t >> pts[i].w))
      throw std::invalid_argument("cloud dump: truncated point table");
  }
  return from_points(region, std::move(pts), seed);
}

PointCloud apply_hyperbolic_map(const PointCloud& cloud, double lambda,
                                Point2 shift) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  const Rect& r = cloud.region();
  Rect mapped{shift.x + lambda * r.x0, shift.x + lambda * r.x1,
              shift.t + r.t0 / lambda, shift.t + r.t1 / lambda};
  std::vector<MarkedPoint> pts;
  pts.reserve(cloud.size());
  for (const MarkedPoint& p : cloud.points())
    pts.push_back({shift.x + lambda * p.x, shift.t + p.t / lambda, p.w});
  return PointCloud::from_points(mapped, std::move(pts), cloud.seed());
}

}  // namespace hammersley
