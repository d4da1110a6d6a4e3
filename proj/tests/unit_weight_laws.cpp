#include "hammersley/weight_law.hpp"

#include <cmath>

#include <stdexcept>

#include <doctest.h>

#include "hammersley/rng.hpp"
#include "hammersley/stats.hpp"
#include "test_util.hpp"

using namespace hammersley;

TEST_CASE("dirac and degenerate bernoulli draws") {
  RngStream rng(1);
  const WeightLaw d1 = WeightLaw::dirac(1.0);
  const WeightLaw b0 = WeightLaw::bernoulli(0.0);
  for (int i = 0; i < 1000; ++i) {
    CHECK_EQ(d1.sample(rng), 1.0);
    CHECK_EQ(b0.sample(rng), 0.0);
  }
}

TEST_CASE("exponential mean over 1e5 draws") {
  RngStream rng(42);
  const WeightLaw law = WeightLaw::exponential(1.0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += law.sample(rng);
  const double mean = sum / n;
  CHECK(mean >= 0.99);
  CHECK(mean <= 1.01);
}

TEST_CASE("sqrt tail integral closed forms") {
  CHECK_EQ(WeightLaw::dirac(1.0).sqrt_tail_integral(), 1.0);
  CHECK_EQ(WeightLaw::exponential(1.0).sqrt_tail_integral(), 2.0);
  CHECK_EQ(WeightLaw::bernoulli(0.25).sqrt_tail_integral(), 0.5);
}

TEST_CASE("sqrt tail integral agrees with adaptive quadrature") {
  for (const WeightLaw& law : testutil::mixed_laws()) {
    const double exact = law.sqrt_tail_integral();
    const double quad = testutil::sqrt_tail_by_quadrature(law);
    CHECK(std::fabs(exact - quad) <= 1e-8 * std::max(1.0, std::fabs(exact)));
  }
  // a couple of off-default parameterizations
  for (const WeightLaw& law :
       {WeightLaw::exponential(0.35), WeightLaw::uniform_interval(0.0, 2.5),
        WeightLaw::bernoulli(0.9), WeightLaw::dirac(0.75),
        WeightLaw::empirical({0.0, 0.0, 1.5, 3.25})}) {
    const double exact = law.sqrt_tail_integral();
    const double quad = testutil::sqrt_tail_by_quadrature(law);
    CHECK(std::fabs(exact - quad) <= 1e-8 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("exponential moment witnesses") {
  const auto d = WeightLaw::dirac(1.0).exponential_moment();
  CHECK(d.finite);
  CHECK_EQ(d.rate, 1.0);
  const auto e = WeightLaw::exponential(1.0).exponential_moment();
  CHECK(e.finite);
  CHECK_EQ(e.rate, 0.5);
  const auto emp =
      WeightLaw::empirical({0.5, 1.0, 4.0}).exponential_moment();
  CHECK(emp.finite);
  CHECK_EQ(emp.rate, 1.0);
}

TEST_CASE("sampling is reproducible from the stream state") {
  const WeightLaw law = WeightLaw::uniform_interval(0.5, 1.5);
  RngStream a(123), b(123);
  for (int i = 0; i < 200; ++i) CHECK_EQ(law.sample(a), law.sample(b));
}

TEST_CASE("empirical cdf of draws is Kolmogorov-close to F") {
  std::uint64_t seed = 2024;
  for (const WeightLaw& law : testutil::mixed_laws()) {
    RngStream rng(seed++);
    std::vector<double> draws(100000);
    for (double& d : draws) d = law.sample(rng);
    const double ks = ks_one_sample_statistic(
        draws, [&](double x) { return law.cdf(x); });
    CHECK(ks < 0.01);
  }
}

TEST_CASE("invalid parameters are rejected at construction") {
  CHECK_THROWS_AS(WeightLaw::dirac(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::dirac(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::bernoulli(1.5), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::uniform_interval(2.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::uniform_interval(-0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::empirical({}), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::empirical({2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightLaw::empirical({-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("draws sit on the weight grid") {
  RngStream rng(5);
  const WeightLaw law = WeightLaw::exponential(2.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = law.sample(rng);
    CHECK_EQ(w, WeightLaw::quantize(w));
    CHECK(w >= 0.0);
  }
}
