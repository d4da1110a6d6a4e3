#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hammersley {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;         // sample standard deviation (n - 1)
  double std_error = 0.0;  // sd / sqrt(n)
};

Moments moments(std::span<const double> values);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

/// Ordinary least squares of y on x.
LineFit ols_line(std::span<const double> x, std::span<const double> y);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| (tie-safe).
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic survival function of the Kolmogorov distribution,
/// P(K > t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_sf(double t);

/// Asymptotic p-value for the two-sample statistic at sizes n and m.
double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m);

/// One-sample statistic sup |F_n - F| against a cdf.
double ks_one_sample_statistic(std::vector<double> sample,
                               const std::function<double(double)>& cdf);

}  // namespace hammersley
