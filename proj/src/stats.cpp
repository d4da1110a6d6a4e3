#include "hammersley/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hammersley {

Moments moments(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("moments: need at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / double(n - 1));
  return {mean, sd, sd / std::sqrt(double(n))};
}

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3)
    throw std::invalid_argument("ols: need matching x/y with >= 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols: degenerate x values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    rss += e * e;
  }
  const double se =
      n > 2 ? std::sqrt(rss / double(n - 2) / sxx) : 0.0;
  return {slope, intercept, se};
}

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks: samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(double(i) / na - double(j) / nb));
  }
  return d;
}

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 1.0) {
    // dual theta series converges fast for small t
    const double pi = std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 20; k += 2) {
      const double term = std::exp(-double(k) * double(k) * pi * pi /
                                   (8.0 * t * t));
      cdf += term;
      if (term < 1e-18) break;
    }
    cdf *= std::sqrt(2.0 * pi) / t;
    return 1.0 - cdf;
  }
  double sf = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * double(k) * double(k) * t * t);
    sf += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::max(sf, 0.0);
}

double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m) {
  const double ne = double(n) * double(m) / double(n + m);
  return kolmogorov_sf(statistic * std::sqrt(ne));
}

double ks_one_sample_statistic(std::vector<double> sample,
                               const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = double(sample.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  double d = 0.0;
  // compare right limits at atoms and left limits just below them, so laws
  // with point masses are handled exactly
  for (std::size_t i = 0; i < sample.size();) {
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) ++j;
    const double v = sample[i];
    d = std::max(d, std::fabs(double(j) / n - cdf(v)));
    d = std::max(d, std::fabs(double(i) / n - cdf(std::nextafter(v, -inf))));
    i = j;
  }
  return d;
}

}  // namespace hammersley
