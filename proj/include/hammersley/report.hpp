#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hammersley {

/// One Monte Carlo summary. Serializes to a single line of key=value pairs;
/// per-replica raw values go to a separate tabular file.
struct EstimatorReport {
  std::string name;
  int replicas = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  std::map<std::string, double> aux;

  double aux_at(const std::string& key) const;
  std::string to_line() const;
  static EstimatorReport from_line(const std::string& line);
};

/// Builds a report from per-replica values (mean, std error, 1.96 CI).
EstimatorReport make_report(std::string name, std::span<const double> values);

/// Per-replica raw table; one row per observation, written as CSV with a
/// header row and 17-significant-digit reals.
struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

std::string format_real(double v);  // %.17g

}  // namespace hammersley
