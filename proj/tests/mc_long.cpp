// Longer fixed-seed Monte Carlo checks; each case states its tolerance.
// Runtime is dominated by clouds with millions of points, so everything
// fans out over the worker pool.
#include <atomic>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hammersley/estimators.hpp"
#include "hammersley/rays.hpp"
#include "hammersley/rng.hpp"
#include "hammersley/shape_geometry.hpp"
#include "hammersley/stats.hpp"

using namespace hammersley;

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
}

// E L(0,(r,r))/r approaches the shape constant from below; at r = 1000 the
// unit-weight estimate sits in [1.90, 2.00], and with the same-run plug-in
// gamma the normalized residual |Delta|/r stays within 0.15 for at least
// 95% of replicas.
TEST_CASE("unit-weight gamma estimate and shape residuals at r=1000") {
  const double r = 1000.0;
  const int replicas = 200;
  std::vector<double> ls(replicas, 0.0);
  parallel_replicas(replicas, 0, [&](int i) {
    const PointCloud cloud =
        PointCloud::sample({0, r, 0, r}, 1.0, WeightLaw::dirac(1.0),
                           derive_seed(600, 0, std::uint64_t(i)));
    ls[std::size_t(i)] = last_passage(cloud, {0, 0}, {r, r});
  });
  std::vector<double> gs(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) gs[i] = ls[i] / r;
  const Moments m = moments(gs);
  CHECK(m.mean >= 1.90);
  CHECK(m.mean <= 2.00);

  const ShapeFunction f = make_shape(m.mean);  // largest-r plug-in
  int ok = 0;
  for (double l : ls)
    if (std::fabs(l - f.value(r, r)) / r <= 0.15) ++ok;
  CHECK(double(ok) / double(replicas) >= 0.95);
}

// Terminal direction of stabilized rays concentrates around alpha.
TEST_CASE("ray direction consistency at radius 1000") {
  const std::vector<double> radii{500, 1000};
  const Rect region = ray_experiment_region(radii);
  const int replicas = 200;
  std::atomic<int> within{0}, usable{0};
  parallel_replicas(replicas, 0, [&](int i) {
    const PointCloud cloud =
        PointCloud::sample(region, 1.0, WeightLaw::dirac(1.0),
                           derive_seed(601, 0, std::uint64_t(i)));
    const RayApproximation ray =
        approx_alpha_ray(cloud, {0, 0}, kQuarterPi, radii);
    if (!ray.stabilized || ray.stable_prefix.empty()) return;
    usable.fetch_add(1);
    const Point2 terminal = ray.stable_prefix.back().pos();
    const double angle = std::atan2(terminal.t, terminal.x);
    if (std::fabs(angle - kQuarterPi) <= 0.15) within.fetch_add(1);
  });
  REQUIRE(usable.load() > 0);
  CHECK(double(within.load()) / double(usable.load()) >= 0.95);
}

// Coalescence radius is monotone in the start separation on fixtures:
// moving the second start onto the segment cannot delay coalescence.
TEST_CASE("monotone coalescence on fixtures") {
  const std::vector<double> radii{250, 500, 1000};
  const Rect region = ray_experiment_region(radii);
  int checked = 0;
  for (std::uint64_t s = 0; s < 14 && checked < 5; ++s) {
    const PointCloud cloud = PointCloud::sample(
        region, 1.0, WeightLaw::dirac(1.0), derive_seed(602, 0, s));
    const auto rx = approx_alpha_ray(cloud, {0, 0}, kQuarterPi, radii);
    const auto ry = approx_alpha_ray(cloud, {40, 0}, kQuarterPi, radii);
    const auto rz = approx_alpha_ray(cloud, {20, 0}, kQuarterPi, radii);
    const auto far = coalescence_point(rx, ry);
    const auto near = coalescence_point(rx, rz);
    if (far && near) {
      CHECK(norm(near->pos()) <= norm(far->pos()) + 1e-9);
      ++checked;
    }
  }
  CHECK(checked >= 3);
}

// The sqrt-tail bound for Bernoulli(1/4) weights is 0.5 gamma(1) and the
// thinning identity makes it asymptotically tight, so the estimate should
// pass and sit close to the bound.
TEST_CASE("martin bound is near-tight for bernoulli weights") {
  const EstimatorReport rep =
      martin_bound_check(WeightLaw::bernoulli(0.25), 500, 200, 604);
  CHECK_EQ(rep.aux_at("integral"), 0.5);
  CHECK_EQ(rep.aux_at("pass"), 1.0);
  const double bound = rep.aux_at("bound");
  CHECK(rep.mean <= bound);
  CHECK(rep.mean >= bound - 0.05 * bound);
}

// The scale test sees unequal distributions when the law actually changes.
TEST_CASE("scale test rejects an actually different law") {
  std::vector<double> base(300), other(300);
  parallel_replicas(300, 0, [&](int i) {
    const PointCloud a =
        PointCloud::sample({0, 60, 0, 60}, 1.0, WeightLaw::dirac(1.0),
                           derive_seed(603, 0, std::uint64_t(i)));
    const PointCloud b =
        PointCloud::sample({0, 60, 0, 60}, 1.0, WeightLaw::exponential(1.0),
                           derive_seed(603, 1, std::uint64_t(i)));
    base[std::size_t(i)] = last_passage(a, {0, 0}, {60, 60});
    other[std::size_t(i)] = last_passage(b, {0, 0}, {60, 60});
  });
  const double d = ks_two_sample_statistic(base, other);
  CHECK(ks_two_sample_pvalue(d, base.size(), other.size()) < 1e-6);
}
