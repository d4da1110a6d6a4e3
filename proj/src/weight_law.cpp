#include "hammersley/weight_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hammersley {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

WeightLaw WeightLaw::dirac(double value) {
  require(std::isfinite(value) && value > 0.0, "dirac: value must be > 0");
  return WeightLaw(LawKind::Dirac, value, 0.0, {});
}

WeightLaw WeightLaw::bernoulli(double p) {
  require(p >= 0.0 && p <= 1.0, "bernoulli: p must lie in [0,1]");
  return WeightLaw(LawKind::Bernoulli, p, 0.0, {});
}

WeightLaw WeightLaw::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, "exponential: rate must be > 0");
  return WeightLaw(LawKind::Exponential, rate, 0.0, {});
}

WeightLaw WeightLaw::uniform_interval(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && lo < hi,
          "uniform: need 0 <= lo < hi");
  return WeightLaw(LawKind::UniformInterval, lo, hi, {});
}

WeightLaw WeightLaw::empirical(std::vector<double> sorted_sample) {
  require(!sorted_sample.empty(), "empirical: sample must be nonempty");
  for (size_t i = 0; i < sorted_sample.size(); ++i) {
    require(std::isfinite(sorted_sample[i]) && sorted_sample[i] >= 0.0,
            "empirical: sample values must be finite and >= 0");
    require(i == 0 || sorted_sample[i - 1] <= sorted_sample[i],
            "empirical: sample must be sorted ascending");
  }
  return WeightLaw(LawKind::Empirical, 0.0, 0.0, std::move(sorted_sample));
}

double WeightLaw::quantize(double w) {
  double q = std::nearbyint(w / kWeightGrid) * kWeightGrid;
  return q < 0.0 ? 0.0 : q;
}

double WeightLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case LawKind::Dirac:
      return quantize(a_);
    case LawKind::Bernoulli:
      return rng.next_unit() < a_ ? 1.0 : 0.0;
    case LawKind::Exponential:
      return quantize(rng.next_exponential(a_));
    case LawKind::UniformInterval:
      return quantize(a_ + rng.next_unit() * (b_ - a_));
    case LawKind::Empirical: {
      size_t i = size_t(rng.next_unit() * double(samples_.size()));
      if (i >= samples_.size()) i = samples_.size() - 1;
      return quantize(samples_[i]);
    }
  }
  return 0.0;
}

double WeightLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  switch (kind_) {
    case LawKind::Dirac:
      return x < a_ ? 0.0 : 1.0;
    case LawKind::Bernoulli:
      return x < 1.0 ? 1.0 - a_ : 1.0;
    case LawKind::Exponential:
      return -std::expm1(-a_ * x);
    case LawKind::UniformInterval:
      if (x < a_) return 0.0;
      if (x >= b_) return 1.0;
      return (x - a_) / (b_ - a_);
    case LawKind::Empirical: {
      auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
      return double(it - samples_.begin()) / double(samples_.size());
    }
  }
  return 1.0;
}

double WeightLaw::sqrt_tail_integral() const {
  switch (kind_) {
    case LawKind::Dirac:
      return a_;  // integrand is 1 on [0, value)
    case LawKind::Bernoulli:
      return std::sqrt(a_);  // sqrt(p) on [0, 1)
    case LawKind::Exponential:
      return 2.0 / a_;  // integral of exp(-rate x / 2)
    case LawKind::UniformInterval:
      // 1 on [0, lo), sqrt((hi-x)/(hi-lo)) on [lo, hi)
      return a_ + (2.0 / 3.0) * (b_ - a_);
    case LawKind::Empirical: {
      // piecewise constant: sqrt(1 - k/n) on [x_k, x_{k+1})
      const double n = double(samples_.size());
      double total = 0.0;
      double prev = 0.0;
      for (size_t k = 0; k < samples_.size(); ++k) {
        total += (samples_[k] - prev) * std::sqrt(1.0 - double(k) / n);
        prev = samples_[k];
      }
      return total;
    }
  }
  return 0.0;
}

WeightLaw::ExpMoment WeightLaw::exponential_moment() const {
  switch (kind_) {
    case LawKind::Exponential:
      return {true, a_ / 2.0};  // finite for any a < rate
    case LawKind::Dirac:
    case LawKind::Bernoulli:
    case LawKind::UniformInterval:
    case LawKind::Empirical:
      return {true, 1.0};  // bounded support
  }
  return {false, 0.0};
}

std::vector<double> WeightLaw::integrand_breakpoints() const {
  switch (kind_) {
    case LawKind::Dirac:
      return {0.0, a_};
    case LawKind::Bernoulli:
      return {0.0, 1.0};
    case LawKind::Exponential:
      // integrand decays like exp(-rate x / 2); beyond 60/rate the remainder
      // is below 1e-13 relative
      return {0.0, 60.0 / a_};
    case LawKind::UniformInterval:
      return {0.0, a_, b_};
    case LawKind::Empirical: {
      std::vector<double> bps{0.0};
      for (double v : samples_)
        if (v > bps.back()) bps.push_back(v);
      return bps;
    }
  }
  return {0.0};
}

std::string WeightLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case LawKind::Dirac:
      os << "dirac(" << a_ << ")";
      break;
    case LawKind::Bernoulli:
      os << "bernoulli(" << a_ << ")";
      break;
    case LawKind::Exponential:
      os << "exponential(" << a_ << ")";
      break;
    case LawKind::UniformInterval:
      os << "uniform(" << a_ << "," << b_ << ")";
      break;
    case LawKind::Empirical:
      os << "empirical(n=" << samples_.size() << ")";
      break;
  }
  return os.str();
}

}  // namespace hammersley
