#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hammersley/planar.hpp"
#include "hammersley/weight_law.hpp"

namespace hammersley {

/// Immutable marked Poisson cloud over a rectangle. Points are kept in
/// strict lexicographic (x, t) order so every downstream tie-break is
/// deterministic.
class PointCloud {
 public:
  /// Poisson(intensity * area) many points, locations uniform, weights
  /// i.i.d. from `law`; fully determined by `seed`.
  static PointCloud sample(Rect region, double intensity, const WeightLaw& law,
                           std::uint64_t seed);

  /// Explicit cloud for tests and loading; sorts and validates.
  static PointCloud from_points(Rect region, std::vector<MarkedPoint> points,
                                std::uint64_t seed = 0);

  const Rect& region() const { return region_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<MarkedPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// Flat text table: header "x0 x1 t0 t1 seed n", then one "x t w" row per
  /// point in full round-trip precision.
  std::string dump() const;
  static PointCloud parse_dump(std::string_view text);

 private:
  PointCloud(Rect region, std::vector<MarkedPoint> points, std::uint64_t seed)
      : region_(region), points_(std::move(points)), seed_(seed) {}

  Rect region_;
  std::vector<MarkedPoint> points_;
  std::uint64_t seed_ = 0;
};

/// Volume-preserving map (x,t) -> shift + (lambda x, t / lambda) applied to
/// points and region; weights unchanged, componentwise order preserved.
PointCloud apply_hyperbolic_map(const PointCloud& cloud, double lambda,
                                Point2 shift = {0.0, 0.0});

}  // namespace hammersley
