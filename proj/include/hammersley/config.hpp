#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hammersley/weight_law.hpp"

namespace hammersley {

/// Parsed experiment configuration. The CLI fills this from flags and the
/// key=value config file (flags win); validation failures carry the name of
/// the offending field.
struct RunConfig {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  std::string experiment;

  // weight law
  std::string law;
  double law_value = kUnset;
  double law_p = kUnset;
  double law_rate = kUnset;
  double law_lo = kUnset;
  double law_hi = kUnset;
  std::vector<double> law_samples;

  // geometry parameters
  double r = kUnset;
  std::vector<double> radii;
  double alpha = kUnset;
  double delta = kUnset;
  double lambda = kUnset;
  double ax = 0.0, at = 0.0;      // primary start
  double bx = kUnset, bt = kUnset;  // second start (coalesce/busemann)

  // replication and output
  int replicas = 0;
  std::uint64_t seed = 12345;
  std::string out = "run-output";
  int threads = 0;

  // oracle suite
  int clouds = 1000;
  int max_points = 10;

  // cloud dump
  double width = kUnset;
  double height = kUnset;
  double intensity = 1.0;
  double field_x = kUnset;  // when both set, also dump the passage field
  double field_t = kUnset;

  WeightLaw build_law() const;
  void validate() const;
};

const std::vector<std::string>& experiment_names();

}  // namespace hammersley
