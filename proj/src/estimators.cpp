#include "hammersley/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "hammersley/rays.hpp"
#include "hammersley/rng.hpp"
#include "hammersley/stats.hpp"

namespace hammersley {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string radius_key(const char* prefix, double r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, r);
  return buf;
}

// L(0,(rx,rt)) on one fresh cloud per replica
std::vector<double> diag_samples(const WeightLaw& law, double rx, double rt,
                                 int replicas, std::uint64_t seed,
                                 std::uint64_t tag, int threads) {
  std::vector<double> out(std::size_t(replicas), 0.0);
  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud = PointCloud::sample(
        {0.0, rx, 0.0, rt}, 1.0, law, derive_seed(seed, tag, std::uint64_t(i)));
    out[std::size_t(i)] = last_passage(cloud, {0.0, 0.0}, {rx, rt});
  });
  return out;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

void parallel_replicas(int total, int threads,
                       const std::function<void(int)>& body) {
  const int workers = std::min(resolve_threads(threads), std::max(total, 1));
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= total) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

ShapeResidual shape_residual(const PointCloud& cloud, const ShapeFunction& f,
                             Point2 p, Point2 q) {
  require(leq(p, q), "shape residual: p must be componentwise <= q");
  return {p, q, last_passage(cloud, p, q) - f.value(q - p)};
}

EstimatorReport estimate_gamma(const WeightLaw& law, double r, int replicas,
                               std::uint64_t seed, int threads,
                               RawTable* raw) {
  require(r > 0.0, "gamma: r must be > 0");
  require(replicas >= 2, "gamma: need at least 2 replicas");
  const std::vector<double> ls = diag_samples(law, r, r, replicas, seed, 0,
                                              threads);
  std::vector<double> values(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) values[i] = ls[i] / r;
  EstimatorReport rep = make_report("gamma", values);
  rep.aux["r"] = r;
  // scale of the downward finite-r bias of the estimate
  rep.aux["bias_envelope"] = std::log(r) * std::log(r) / std::sqrt(r);
  if (raw) {
    raw->columns = {"replica", "L", "gamma_hat"};
    for (std::size_t i = 0; i < ls.size(); ++i)
      raw->add_row({double(i), ls[i], values[i]});
  }
  return rep;
}

EstimatorReport martin_bound_check(const WeightLaw& law, double r,
                                   int replicas, std::uint64_t seed,
                                   int threads, RawTable* raw) {
  require(r > 0.0, "martin bound: r must be > 0");
  require(replicas >= 2, "martin bound: need at least 2 replicas");
  const double integral = law.sqrt_tail_integral();
  require(std::isfinite(integral),
          "martin bound: sqrt tail integral of the law is infinite");

  const std::vector<double> l_law = diag_samples(law, r, r, replicas, seed, 0,
                                                 threads);
  const WeightLaw unit = WeightLaw::dirac(1.0);
  const std::vector<double> l_unit = diag_samples(unit, r, r, replicas, seed,
                                                  1, threads);
  std::vector<double> g_law(l_law.size()), g_unit(l_unit.size());
  for (std::size_t i = 0; i < l_law.size(); ++i) g_law[i] = l_law[i] / r;
  for (std::size_t i = 0; i < l_unit.size(); ++i) g_unit[i] = l_unit[i] / r;

  EstimatorReport rep = make_report("martin", g_law);
  const Moments mu = moments(g_unit);
  const double bound = mu.mean * integral;
  const double slack = 3.0 * std::sqrt(rep.std_error * rep.std_error +
                                       integral * integral * mu.std_error *
                                           mu.std_error);
  rep.aux["r"] = r;
  rep.aux["gamma1"] = mu.mean;
  rep.aux["integral"] = integral;
  rep.aux["bound"] = bound;
  rep.aux["slack"] = slack;
  rep.aux["pass"] = rep.mean <= bound + slack ? 1.0 : 0.0;
  if (raw) {
    raw->columns = {"replica", "L_law", "L_unit"};
    for (std::size_t i = 0; i < l_law.size(); ++i)
      raw->add_row({double(i), l_law[i], l_unit[i]});
  }
  return rep;
}

EstimatorReport fluctuation_scan(const WeightLaw& law,
                                 std::vector<double> radii, int replicas,
                                 std::uint64_t seed, int threads,
                                 RawTable* raw) {
  require(radii.size() >= 4, "fluctuation scan: need at least 4 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i - 1] < radii[i], "fluctuation scan: radii must increase");
  require(replicas >= 2, "fluctuation scan: need at least 2 replicas");
  require(law.exponential_moment().finite,
          "fluctuation scan: law needs a finite exponential moment");

  std::vector<std::vector<double>> ls(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k)
    ls[k] = diag_samples(law, radii[k], radii[k], replicas, seed,
                         std::uint64_t(k), threads);

  std::vector<double> sds(radii.size());
  bool degenerate = false;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    sds[k] = moments(ls[k]).sd;
    if (sds[k] == 0.0) degenerate = true;
  }

  EstimatorReport rep;
  rep.name = "fluct";
  rep.replicas = replicas;
  if (degenerate) {
    rep.mean = kNaN;
    rep.std_error = kNaN;
    rep.ci95 = {kNaN, kNaN};
    rep.aux["degenerate"] = 1.0;
    rep.aux["exponent"] = kNaN;
    rep.aux["diffusive_ok"] = kNaN;
  } else {
    std::vector<double> lx(radii.size()), ly(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      lx[k] = std::log(radii[k]);
      ly[k] = std::log(sds[k]);
    }
    const LineFit fit = ols_line(lx, ly);
    rep.mean = fit.slope;
    rep.std_error = fit.slope_se;
    rep.ci95 = {fit.slope - 1.96 * fit.slope_se,
                fit.slope + 1.96 * fit.slope_se};
    const double c0 = sds[0] / (std::sqrt(radii[0]) * std::log(radii[0]));
    bool ok = true;
    for (std::size_t k = 0; k < radii.size(); ++k)
      ok = ok && sds[k] <= c0 * std::sqrt(radii[k]) * std::log(radii[k]) *
                               (1.0 + 1e-12);
    rep.aux["degenerate"] = 0.0;
    rep.aux["exponent"] = fit.slope;
    rep.aux["diffusive_ok"] = ok ? 1.0 : 0.0;
    rep.aux["diffusive_c"] = c0;
  }
  for (std::size_t k = 0; k < radii.size(); ++k)
    rep.aux[radius_key("sd_", radii[k])] = sds[k];
  if (raw) {
    raw->columns = {"radius", "replica", "L"};
    for (std::size_t k = 0; k < radii.size(); ++k)
      for (std::size_t i = 0; i < ls[k].size(); ++i)
        raw->add_row({radii[k], double(i), ls[k][i]});
  }
  return rep;
}

EstimatorReport scale_invariance_test(const WeightLaw& law, double r,
                                      double lambda, int replicas,
                                      std::uint64_t seed, int threads,
                                      RawTable* raw) {
  require(r > 0.0, "scale test: r must be > 0");
  require(lambda > 0.0, "scale test: lambda must be > 0");
  require(replicas >= 200,
          "scale test: the asymptotic KS p-value needs >= 200 replicas");

  const std::vector<double> base = diag_samples(law, r, r, replicas, seed, 0,
                                                threads);
  const std::vector<double> mapped = diag_samples(law, lambda * r, r / lambda,
                                                  replicas, seed, 1, threads);
  const double d = ks_two_sample_statistic(base, mapped);
  const double p = ks_two_sample_pvalue(d, base.size(), mapped.size());

  EstimatorReport rep;
  rep.name = "scale";
  rep.replicas = replicas;
  rep.mean = d;
  rep.std_error = 0.0;
  rep.ci95 = {d, d};
  rep.aux["r"] = r;
  rep.aux["lambda"] = lambda;
  rep.aux["ks_stat"] = d;
  rep.aux["ks_pvalue"] = p;
  if (raw) {
    raw->columns = {"arm", "replica", "L"};
    for (std::size_t i = 0; i < base.size(); ++i)
      raw->add_row({0.0, double(i), base[i]});
    for (std::size_t i = 0; i < mapped.size(); ++i)
      raw->add_row({1.0, double(i), mapped[i]});
  }
  return rep;
}

EstimatorReport path_count_tail(const WeightLaw& law, double r, int replicas,
                                std::uint64_t seed, int threads,
                                RawTable* raw) {
  require(r >= 10.0, "path count: r must be >= 10");
  require(replicas >= 2, "path count: need at least 2 replicas");

  std::vector<double> counts(std::size_t(replicas), 0.0);
  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud = PointCloud::sample(
        {0.0, r, 0.0, r}, 1.0, law, derive_seed(seed, 0, std::uint64_t(i)));
    counts[std::size_t(i)] =
        double(lowest_geodesic(cloud, {0.0, 0.0}, {r, r}).chain.size());
  });

  const double threshold = 2.0 * (std::log(2.0) + 2.0 * std::numbers::e);
  std::vector<double> ratios(counts.size());
  double max_ratio = 0.0;
  double violations = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    ratios[i] = counts[i] / r;
    max_ratio = std::max(max_ratio, ratios[i]);
    if (counts[i] > threshold * r) violations += 1.0;
  }

  EstimatorReport rep = make_report("pathcount", ratios);
  rep.aux["r"] = r;
  rep.aux["max_ratio"] = max_ratio;
  rep.aux["violations"] = violations;
  rep.aux["threshold"] = threshold;
  if (raw) {
    raw->columns = {"replica", "count", "ratio"};
    for (std::size_t i = 0; i < counts.size(); ++i)
      raw->add_row({double(i), counts[i], ratios[i]});
  }
  return rep;
}

EstimatorReport straightness_scan(const WeightLaw& law,
                                  std::vector<double> radii, double delta,
                                  int replicas, std::uint64_t seed,
                                  int threads, RawTable* raw) {
  require(!radii.empty(), "straightness: need at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i - 1] < radii[i], "straightness: radii must increase");
  require(delta > 0.0 && delta < 0.25,
          "straightness: delta must lie in (0, 1/4)");
  require(replicas >= 2, "straightness: need at least 2 replicas");

  const double rmax = radii.back();
  const std::size_t nr = radii.size();
  std::vector<std::vector<double>> dev(nr,
                                       std::vector<double>(replicas, 0.0));
  std::vector<double> cone_ok(std::size_t(replicas), kNaN);
  std::vector<double> mid_norm(std::size_t(replicas), kNaN);

  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud =
        PointCloud::sample({0.0, rmax, 0.0, rmax}, 1.0, law,
                           derive_seed(seed, 0, std::uint64_t(i)));
    for (std::size_t k = 0; k < nr; ++k) {
      const double r = radii[k];
      const Geodesic geo = lowest_geodesic(cloud, {0.0, 0.0}, {r, r});
      dev[k][std::size_t(i)] = transversal_deviation(geo);
      if (k + 1 == nr && !geo.chain.empty()) {
        // chain point with norm nearest r/2 anchors the cone
        const MarkedPoint* best = &geo.chain.front();
        double best_err = std::fabs(norm(best->pos()) - r / 2.0);
        for (const MarkedPoint& p : geo.chain) {
          const double err = std::fabs(norm(p.pos()) - r / 2.0);
          if (err < best_err) {
            best_err = err;
            best = &p;
          }
        }
        const Point2 mid = best->pos();
        mid_norm[std::size_t(i)] = norm(mid);
        const double half = std::pow(norm(mid), -delta);
        cone_ok[std::size_t(i)] =
            angle_between(Point2{r, r} - mid, mid) <= half ? 1.0 : 0.0;
      }
    }
  });

  std::vector<double> mean_dev(nr);
  bool degenerate = false;
  for (std::size_t k = 0; k < nr; ++k) {
    mean_dev[k] = moments(dev[k]).mean;
    if (!(mean_dev[k] > 0.0)) degenerate = true;
  }

  EstimatorReport rep;
  rep.name = "straightness";
  rep.replicas = replicas;
  if (degenerate || nr < 3) {
    rep.mean = kNaN;
    rep.std_error = kNaN;
    rep.ci95 = {kNaN, kNaN};
    rep.aux["wander_exponent"] = kNaN;
    rep.aux["degenerate"] = 1.0;
  } else {
    std::vector<double> lx(nr), ly(nr);
    for (std::size_t k = 0; k < nr; ++k) {
      lx[k] = std::log(radii[k]);
      ly[k] = std::log(mean_dev[k]);
    }
    const LineFit fit = ols_line(lx, ly);
    rep.mean = fit.slope;
    rep.std_error = fit.slope_se;
    rep.ci95 = {fit.slope - 1.96 * fit.slope_se,
                fit.slope + 1.96 * fit.slope_se};
    rep.aux["wander_exponent"] = fit.slope;
    rep.aux["degenerate"] = 0.0;
  }
  int cones = 0, cone_hits = 0;
  for (double v : cone_ok)
    if (v == v) {
      ++cones;
      if (v == 1.0) ++cone_hits;
    }
  rep.aux["cone_ok"] = cones > 0 ? double(cone_hits) / double(cones) : kNaN;
  rep.aux["delta"] = delta;
  for (std::size_t k = 0; k < nr; ++k)
    rep.aux[radius_key("dev_", radii[k])] = mean_dev[k];
  if (raw) {
    raw->columns = {"radius", "replica", "deviation", "mid_norm", "cone_ok"};
    for (std::size_t k = 0; k < nr; ++k)
      for (int i = 0; i < replicas; ++i)
        raw->add_row({radii[k], double(i), dev[k][std::size_t(i)],
                      k + 1 == nr ? mid_norm[std::size_t(i)] : kNaN,
                      k + 1 == nr ? cone_ok[std::size_t(i)] : kNaN});
  }
  return rep;
}

Rect ray_experiment_region(const std::vector<double>& radii) {
  require(!radii.empty(), "ray experiment: need radii");
  const double side = 1.3 * radii.back();
  return {0.0, side, 0.0, side};
}

EstimatorReport ray_stabilization_scan(const WeightLaw& law, double alpha,
                                       std::vector<double> radii, Point2 start,
                                       int replicas, std::uint64_t seed,
                                       int threads, RawTable* raw) {
  require(replicas >= 2, "ray scan: need at least 2 replicas");
  const Rect region = ray_experiment_region(radii);

  std::vector<double> stab(std::size_t(replicas), 0.0);
  std::vector<double> stable_len(std::size_t(replicas), 0.0);
  std::vector<double> term_x(std::size_t(replicas), kNaN);
  std::vector<double> term_t(std::size_t(replicas), kNaN);
  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud = PointCloud::sample(
        region, 1.0, law, derive_seed(seed, 0, std::uint64_t(i)));
    const RayApproximation ray = approx_alpha_ray(cloud, start, alpha, radii);
    stab[std::size_t(i)] = ray.stabilized ? 1.0 : 0.0;
    stable_len[std::size_t(i)] = double(ray.stable_prefix.size());
    if (!ray.stable_prefix.empty()) {
      term_x[std::size_t(i)] = ray.stable_prefix.back().x;
      term_t[std::size_t(i)] = ray.stable_prefix.back().t;
    }
  });

  EstimatorReport rep = make_report("rays", stab);
  rep.aux["alpha"] = alpha;
  rep.aux["stabilized_fraction"] = rep.mean;
  rep.aux["mean_stable_len"] = moments(stable_len).mean;
  if (raw) {
    raw->columns = {"replica", "stabilized", "stable_len", "terminal_x",
                    "terminal_t"};
    for (int i = 0; i < replicas; ++i)
      raw->add_row({double(i), stab[std::size_t(i)],
                    stable_len[std::size_t(i)], term_x[std::size_t(i)],
                    term_t[std::size_t(i)]});
  }
  return rep;
}

EstimatorReport coalescence_scan(const WeightLaw& law, double alpha,
                                 std::vector<double> radii, Point2 start_a,
                                 Point2 start_b, int replicas,
                                 std::uint64_t seed, int threads,
                                 RawTable* raw) {
  require(replicas >= 2, "coalescence scan: need at least 2 replicas");
  const Rect region = ray_experiment_region(radii);

  std::vector<double> stab_a(std::size_t(replicas), 0.0);
  std::vector<double> stab_b(std::size_t(replicas), 0.0);
  std::vector<double> merged(std::size_t(replicas), 0.0);
  std::vector<double> cx(std::size_t(replicas), kNaN);
  std::vector<double> ct(std::size_t(replicas), kNaN);
  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud = PointCloud::sample(
        region, 1.0, law, derive_seed(seed, 0, std::uint64_t(i)));
    const RayApproximation ra = approx_alpha_ray(cloud, start_a, alpha, radii);
    const RayApproximation rb = approx_alpha_ray(cloud, start_b, alpha, radii);
    stab_a[std::size_t(i)] = ra.stabilized ? 1.0 : 0.0;
    stab_b[std::size_t(i)] = rb.stabilized ? 1.0 : 0.0;
    if (const auto c = coalescence_point(ra, rb)) {
      merged[std::size_t(i)] = 1.0;
      cx[std::size_t(i)] = c->x;
      ct[std::size_t(i)] = c->t;
    }
  });

  EstimatorReport rep = make_report("coalesce", merged);
  int both = 0, both_merged = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (stab_a[i] == 1.0 && stab_b[i] == 1.0) {
      ++both;
      if (merged[i] == 1.0) ++both_merged;
    }
  }
  rep.aux["alpha"] = alpha;
  rep.aux["stabilized_both_fraction"] =
      double(both) / double(replicas);
  rep.aux["coalesced_fraction"] = rep.mean;
  rep.aux["coalesced_given_stabilized"] =
      both > 0 ? double(both_merged) / double(both) : kNaN;
  if (raw) {
    raw->columns = {"replica", "stabilized_a", "stabilized_b", "coalesced",
                    "c_x", "c_t"};
    for (int i = 0; i < replicas; ++i)
      raw->add_row({double(i), stab_a[std::size_t(i)], stab_b[std::size_t(i)],
                    merged[std::size_t(i)], cx[std::size_t(i)],
                    ct[std::size_t(i)]});
  }
  return rep;
}

EstimatorReport busemann_scan(const WeightLaw& law, double alpha,
                              std::vector<double> radii, Point2 start_a,
                              Point2 start_b, int replicas, std::uint64_t seed,
                              int threads, RawTable* raw) {
  require(replicas >= 2, "busemann scan: need at least 2 replicas");
  const Rect region = ray_experiment_region(radii);

  std::vector<double> coalesced(std::size_t(replicas), 0.0);
  std::vector<double> value(std::size_t(replicas), kNaN);
  std::vector<double> antisym(std::size_t(replicas), kNaN);
  parallel_replicas(replicas, threads, [&](int i) {
    const PointCloud cloud = PointCloud::sample(
        region, 1.0, law, derive_seed(seed, 0, std::uint64_t(i)));
    const RayApproximation ra = approx_alpha_ray(cloud, start_a, alpha, radii);
    const RayApproximation rb = approx_alpha_ray(cloud, start_b, alpha, radii);
    const auto fwd = busemann_from_rays(ra, rb);
    if (!fwd) return;
    const auto rev = busemann_from_rays(rb, ra);
    coalesced[std::size_t(i)] = 1.0;
    value[std::size_t(i)] = fwd->value;
    antisym[std::size_t(i)] =
        rev && rev->value == -fwd->value ? 1.0 : 0.0;
  });

  std::vector<double> defined;
  for (double v : value)
    if (v == v) defined.push_back(v);
  EstimatorReport rep = defined.size() >= 2
                            ? make_report("busemann", defined)
                            : EstimatorReport{"busemann", replicas, kNaN,
                                              kNaN, {kNaN, kNaN}, {}};
  rep.replicas = replicas;
  double cf = 0.0, anti_all = 1.0;
  for (std::size_t i = 0; i < coalesced.size(); ++i) {
    cf += coalesced[i];
    if (coalesced[i] == 1.0 && antisym[i] != 1.0) anti_all = 0.0;
  }
  rep.aux["alpha"] = alpha;
  rep.aux["coalesced_fraction"] = cf / double(replicas);
  rep.aux["antisymmetry_ok"] = anti_all;
  if (raw) {
    raw->columns = {"replica", "coalesced", "value"};
    for (int i = 0; i < replicas; ++i)
      raw->add_row({double(i), coalesced[std::size_t(i)],
                    value[std::size_t(i)]});
  }
  return rep;
}

OracleSuiteResult oracle_suite(int clouds, int max_points, std::uint64_t seed,
                               RawTable* raw) {
  require(clouds >= 1, "oracle suite: need at least 1 cloud");
  require(max_points >= 1 && max_points <= 20,
          "oracle suite: max_points must lie in [1, 20]");

  const std::vector<WeightLaw> laws = {
      WeightLaw::dirac(1.0), WeightLaw::exponential(1.0),
      WeightLaw::uniform_interval(0.5, 1.5), WeightLaw::bernoulli(0.3),
      WeightLaw::empirical({0.25, 0.5, 1.0, 2.0})};

  OracleSuiteResult res;
  res.clouds = clouds;
  if (raw)
    raw->columns = {"cloud", "points", "value_dp", "value_oracle", "match",
                    "lowest_ok"};

  const Rect region{0.0, 2.5, 0.0, 2.5};
  for (int c = 0; c < clouds; ++c) {
    const WeightLaw& law = laws[std::size_t(c) % laws.size()];
    PointCloud cloud = PointCloud::sample(region, 1.0, law,
                                          derive_seed(seed, 0, std::uint64_t(c)));
    for (std::uint64_t attempt = 1; int(cloud.size()) > max_points; ++attempt)
      cloud = PointCloud::sample(region, 1.0, law,
                                 derive_seed(seed, attempt, std::uint64_t(c)));

    const Point2 p{0.0, 0.0};
    const Point2 q{region.x1, region.t1};
    const double dp = last_passage(cloud, p, q);
    const Geodesic geo = lowest_geodesic(cloud, p, q);
    const BruteForceResult bf = brute_force_last_passage(cloud, p, q);

    bool match = dp == bf.value && geo.value == bf.value;
    bool in_set = false;
    bool lowest = true;
    for (const auto& chain : bf.optimal_chains) {
      if (chain == geo.chain) in_set = true;
      if (!staircase_pointwise_leq(geo.chain, chain, p)) lowest = false;
    }
    match = match && in_set;
    if (!(match && lowest)) ++res.mismatches;
    if (raw)
      raw->add_row({double(c), double(cloud.size()), dp, bf.value,
                    match ? 1.0 : 0.0, lowest ? 1.0 : 0.0});
  }
  return res;
}

}  // namespace hammersley
