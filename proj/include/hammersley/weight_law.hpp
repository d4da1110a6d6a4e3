#pragma once

#include <string>
#include <vector>

#include "hammersley/rng.hpp"

namespace hammersley {

enum class LawKind { Dirac, Bernoulli, Exponential, UniformInterval, Empirical };

/// Weight distribution F on [0, inf). Immutable and freely shareable across
/// threads; draws come from a caller-owned stream.
///
/// Draws are snapped to the binary grid 2^-26 so that every passage value is
/// an exact finite-precision sum; exact-arithmetic identities (super-
/// additivity, map invariance, Busemann cocycle) then hold bitwise. The snap
/// perturbs each draw by at most 2^-27, far below every statistical
/// tolerance used here.
class WeightLaw {
 public:
  static constexpr double kWeightGrid = 0x1.0p-26;

  static WeightLaw dirac(double value);
  static WeightLaw bernoulli(double p);  // atom at 1 with prob p, else 0
  static WeightLaw exponential(double rate);
  static WeightLaw uniform_interval(double lo, double hi);
  static WeightLaw empirical(std::vector<double> sorted_sample);

  LawKind kind() const { return kind_; }

  /// One quantized draw from F; deterministic given the stream state.
  double sample(RngStream& rng) const;

  double cdf(double x) const;

  /// Exact closed form of the square-root tail integral of 1 - F.
  double sqrt_tail_integral() const;

  struct ExpMoment {
    bool finite = false;
    double rate = 0.0;  // witness a with E exp(a w) < inf
  };
  ExpMoment exponential_moment() const;

  /// Endpoints of the smooth pieces of x -> sqrt(1 - F(x)); used by
  /// numerical cross-checks.
  std::vector<double> integrand_breakpoints() const;

  std::string describe() const;

  static double quantize(double w);

  bool operator==(const WeightLaw&) const = default;

 private:
  WeightLaw(LawKind kind, double a, double b, std::vector<double> samples)
      : kind_(kind), a_(a), b_(b), samples_(std::move(samples)) {}

  LawKind kind_;
  double a_ = 0.0;  // value / p / rate / lo
  double b_ = 0.0;  // hi
  std::vector<double> samples_;
};

}  // namespace hammersley
