#pragma once

#include <cstdint>
#include <vector>

#include "hammersley/planar.hpp"
#include "hammersley/point_cloud.hpp"

namespace hammersley {

/// Per-point passage values from a fixed source, with optimal-predecessor
/// links. Covers the cloud points strictly above the source in both
/// coordinates; elsewhere value is NaN and pred is -1.
struct PassageField {
  Point2 source;
  std::vector<double> value;        // value[i] = L(source, p_i) incl. w_i
  std::vector<std::int64_t> pred;   // cloud index of the lowest attainer
  bool covers(std::size_t i) const { return value[i] == value[i]; }
};

/// Lowest optimal up-right chain between two corners. Chain points are
/// strictly increasing in both coordinates; `value` equals the last-passage
/// time between start and end.
struct Geodesic {
  Point2 start;
  Point2 end;
  std::vector<MarkedPoint> chain;
  double value = 0.0;
};

/// Exhaustive-enumeration oracle output (test use; capped instance size).
struct BruteForceResult {
  double value = 0.0;
  std::vector<std::vector<MarkedPoint>> optimal_chains;
};

/// Maximum total weight over up-right chains of cloud points strictly above
/// p in both coordinates and componentwise <= q; 0 if the interval is empty.
/// O(n log n) in the number of interval points.
double last_passage(const PointCloud& cloud, Point2 p, Point2 q);

/// Passage values from `source` for every cloud point strictly above it,
/// with ties in the DP maxima resolved toward the predecessor of minimal t,
/// then minimal x.
PassageField passage_field(const PointCloud& cloud, Point2 source);

/// The lowest chain attaining last_passage(cloud, p, q): walking forward,
/// each step takes the optimal extender of minimal t (ties by minimal x).
/// Zero-weight points never appear on the chain (they cannot change L, and
/// threading them through would lift the staircase).
Geodesic lowest_geodesic(const PointCloud& cloud, Point2 p, Point2 q);

/// All optimal chains by exhaustive enumeration; rejects intervals with more
/// than 20 points.
BruteForceResult brute_force_last_passage(const PointCloud& cloud, Point2 p,
                                          Point2 q);

/// Whether cloud point p lies on the lowest geodesic from the origin to q
/// (q counts as lying on its own geodesic).
bool r_out_member(const PointCloud& cloud, const MarkedPoint& p, Point2 q);

/// Whether chain a's right-then-up staircase from `start` lies pointwise at
/// or below chain b's. Chains must be sorted lexicographically (as emitted).
bool staircase_pointwise_leq(const std::vector<MarkedPoint>& a,
                             const std::vector<MarkedPoint>& b, Point2 start);

}  // namespace hammersley
