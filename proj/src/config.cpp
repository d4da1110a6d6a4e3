#include "hammersley/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hammersley {

namespace {
void need(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}
bool set(double v) { return v == v; }
}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "gamma",        "martin",   "fluct",     "scale",
      "rays",         "coalesce", "busemann",  "straightness",
      "pathcount",    "oracle-suite", "dump-cloud"};
  return names;
}

WeightLaw RunConfig::build_law() const {
  need(!law.empty(), "law is required (--law)");
  if (law == "dirac") {
    need(set(law_value), "law.value is required for law=dirac (--law-value)");
    return WeightLaw::dirac(law_value);
  }
  if (law == "bernoulli") {
    need(set(law_p), "law.p is required for law=bernoulli (--law-p)");
    return WeightLaw::bernoulli(law_p);
  }
  if (law == "exponential") {
    need(set(law_rate),
         "law.rate is required for law=exponential (--law-rate)");
    return WeightLaw::exponential(law_rate);
  }
  if (law == "uniform") {
    need(set(law_lo), "law.lo is required for law=uniform (--law-lo)");
    need(set(law_hi), "law.hi is required for law=uniform (--law-hi)");
    return WeightLaw::uniform_interval(law_lo, law_hi);
  }
  if (law == "empirical") {
    need(!law_samples.empty(),
         "law.samples is required for law=empirical (--law-samples)");
    std::vector<double> sorted = law_samples;
    std::sort(sorted.begin(), sorted.end());
    return WeightLaw::empirical(std::move(sorted));
  }
  throw std::invalid_argument(
      "unknown law '" + law +
      "' (expected dirac|bernoulli|exponential|uniform|empirical)");
}

void RunConfig::validate() const {
  const auto& names = experiment_names();
  need(std::find(names.begin(), names.end(), experiment) != names.end(),
       "unknown experiment '" + experiment + "'");

  auto need_increasing = [&](std::size_t min_count, const char* what) {
    need(radii.size() >= min_count,
         std::string(what) + ": radii requires at least " +
             std::to_string(min_count) + " entries (--radii)");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      need(radii[i] > 0.0, "radii must be positive (--radii)");
      need(i == 0 || radii[i - 1] < radii[i],
           "radii must be strictly increasing (--radii)");
    }
  };

  if (experiment == "oracle-suite") {
    need(clouds >= 1, "clouds must be >= 1 (--clouds)");
    need(max_points >= 1 && max_points <= 20,
         "max-points must lie in [1, 20] (--max-points)");
    return;
  }

  build_law();

  if (experiment == "dump-cloud") {
    need(set(width) && width > 0.0, "width is required (--width)");
    need(set(height) && height > 0.0, "height is required (--height)");
    need(intensity > 0.0, "intensity must be > 0 (--intensity)");
    return;
  }

  need(replicas >= 2, "replicas must be >= 2 (--replicas)");

  if (experiment == "gamma" || experiment == "martin") {
    need(set(r) && r > 0.0, "r is required and must be > 0 (--r)");
  } else if (experiment == "pathcount") {
    need(set(r) && r >= 10.0, "r is required and must be >= 10 (--r)");
  } else if (experiment == "fluct") {
    need_increasing(4, "fluct");
  } else if (experiment == "scale") {
    need(set(r) && r > 0.0, "r is required and must be > 0 (--r)");
    need(set(lambda) && lambda > 0.0,
         "lambda is required and must be > 0 (--lambda)");
    need(replicas >= 200, "scale requires replicas >= 200 (--replicas)");
  } else if (experiment == "straightness") {
    need_increasing(1, "straightness");
    need(set(delta) && delta > 0.0 && delta < 0.25,
         "delta is required and must lie in (0, 1/4) (--delta)");
  } else if (experiment == "rays" || experiment == "coalesce" ||
             experiment == "busemann") {
    need(set(alpha) && alpha > 0.0 && alpha < std::numbers::pi / 2.0,
         "alpha is required and must lie in (0, pi/2) (--alpha)");
    need_increasing(2, experiment.c_str());
    if (experiment != "rays")
      need(set(bx) && set(bt),
           "second start is required (--bx and --bt)");
  }
}

}  // namespace hammersley
