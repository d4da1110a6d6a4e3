#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hammersley/lpp.hpp"
#include "hammersley/planar.hpp"
#include "hammersley/point_cloud.hpp"
#include "hammersley/report.hpp"
#include "hammersley/shape_geometry.hpp"
#include "hammersley/weight_law.hpp"

namespace hammersley {

int resolve_threads(int requested);  // <= 0 picks the hardware count

/// Runs body(0..total-1) on a small worker pool. Replica streams are derived
/// from (seed, index), and callers aggregate in index order afterwards, so
/// results never depend on scheduling.
void parallel_replicas(int total, int threads,
                       const std::function<void(int)>& body);

/// Delta(p, q) = L(p, q) - f(q - p).
struct ShapeResidual {
  Point2 p, q;
  double value = 0.0;
};

ShapeResidual shape_residual(const PointCloud& cloud, const ShapeFunction& f,
                             Point2 p, Point2 q);

// Every driver below is bit-reproducible from (arguments, seed). The
// optional RawTable receives one row per replica observation.

/// Mean of L(0,(r,r))/r over independent clouds. The estimate is a lower
/// bound on the shape constant with bias O(r^-1/2 log^2 r); aux carries the
/// envelope scale.
EstimatorReport estimate_gamma(const WeightLaw& law, double r, int replicas,
                               std::uint64_t seed, int threads = 0,
                               RawTable* raw = nullptr);

/// Checks the thinning upper bound gamma(1) * integral sqrt(1-F) against a
/// same-budget unit-weight run; aux.pass records the verdict.
EstimatorReport martin_bound_check(const WeightLaw& law, double r,
                                   int replicas, std::uint64_t seed,
                                   int threads = 0, RawTable* raw = nullptr);

/// Per-radius standard deviation of L(0,(r,r)) and the log-log slope;
/// aux.diffusive_ok asserts sd(r) <= C sqrt(r) log r anchored at the
/// smallest radius.
EstimatorReport fluctuation_scan(const WeightLaw& law,
                                 std::vector<double> radii, int replicas,
                                 std::uint64_t seed, int threads = 0,
                                 RawTable* raw = nullptr);

/// Two-sample KS test of L(0,(r,r)) against L(0,(lambda r, r/lambda)) on
/// independent clouds; sample sizes of at least 200 are enforced.
EstimatorReport scale_invariance_test(const WeightLaw& law, double r,
                                      double lambda, int replicas,
                                      std::uint64_t seed, int threads = 0,
                                      RawTable* raw = nullptr);

/// Geodesic cardinality |pi(0,(r,r))| per replica; aux counts violations of
/// the 2(log 2 + 2e) r tail threshold.
EstimatorReport path_count_tail(const WeightLaw& law, double r, int replicas,
                                std::uint64_t seed, int threads = 0,
                                RawTable* raw = nullptr);

/// Transversal deviation of the diagonal geodesic per radius plus a cone
/// containment check at the largest radius (apex at the chain point with
/// norm nearest r/2, half angle |p|^-delta).
EstimatorReport straightness_scan(const WeightLaw& law,
                                  std::vector<double> radii, double delta,
                                  int replicas, std::uint64_t seed,
                                  int threads = 0, RawTable* raw = nullptr);

/// Fraction of replicas whose alpha-ray approximation stabilizes.
EstimatorReport ray_stabilization_scan(const WeightLaw& law, double alpha,
                                       std::vector<double> radii, Point2 start,
                                       int replicas, std::uint64_t seed,
                                       int threads = 0, RawTable* raw = nullptr);

/// Stabilization and coalescence statistics for rays from two starts.
EstimatorReport coalescence_scan(const WeightLaw& law, double alpha,
                                 std::vector<double> radii, Point2 start_a,
                                 Point2 start_b, int replicas,
                                 std::uint64_t seed, int threads = 0,
                                 RawTable* raw = nullptr);

/// Busemann increments between two starts; aux tracks the coalescence rate
/// and exact antisymmetry.
EstimatorReport busemann_scan(const WeightLaw& law, double alpha,
                              std::vector<double> radii, Point2 start_a,
                              Point2 start_b, int replicas, std::uint64_t seed,
                              int threads = 0, RawTable* raw = nullptr);

/// Solver-vs-enumeration check on small random clouds with mixed laws:
/// exact value equality, the emitted chain is among the optimal chains, and
/// its staircase is pointwise lowest.
struct OracleSuiteResult {
  int clouds = 0;
  int mismatches = 0;
};
OracleSuiteResult oracle_suite(int clouds, int max_points, std::uint64_t seed,
                               RawTable* raw = nullptr);

/// Cloud region used by the ray experiments: grown to 1.3x the largest
/// target radius in each coordinate.
Rect ray_experiment_region(const std::vector<double>& radii);

}  // namespace hammersley
