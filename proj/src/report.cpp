#include "hammersley/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hammersley/stats.hpp"

namespace hammersley {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double EstimatorReport::aux_at(const std::string& key) const {
  auto it = aux.find(key);
  if (it == aux.end())
    throw std::out_of_range("report: missing aux key '" + key + "'");
  return it->second;
}

std::string EstimatorReport::to_line() const {
  std::ostringstream os;
  os << "name=" << name << " replicas=" << replicas
     << " mean=" << format_real(mean)
     << " std_error=" << format_real(std_error)
     << " ci95_lo=" << format_real(ci95.first)
     << " ci95_hi=" << format_real(ci95.second);
  for (const auto& [k, v] : aux) os << " " << k << "=" << format_real(v);
  return os.str();
}

EstimatorReport EstimatorReport::from_line(const std::string& line) {
  EstimatorReport rep;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("report line: token without '='");
    const std::string key = token.substr(0, eq);
    const std::string val = token.substr(eq + 1);
    if (key == "name")
      rep.name = val;
    else if (key == "replicas")
      rep.replicas = std::stoi(val);
    else if (key == "mean")
      rep.mean = std::stod(val);
    else if (key == "std_error")
      rep.std_error = std::stod(val);
    else if (key == "ci95_lo")
      rep.ci95.first = std::stod(val);
    else if (key == "ci95_hi")
      rep.ci95.second = std::stod(val);
    else
      rep.aux[key] = std::stod(val);
  }
  return rep;
}

EstimatorReport make_report(std::string name, std::span<const double> values) {
  const Moments m = moments(values);
  EstimatorReport rep;
  rep.name = std::move(name);
  rep.replicas = int(values.size());
  rep.mean = m.mean;
  rep.std_error = m.std_error;
  rep.ci95 = {m.mean - 1.96 * m.std_error, m.mean + 1.96 * m.std_error};
  return rep;
}

void RawTable::add_row(std::vector<double> row) {
  rows.push_back(std::move(row));
}

std::string RawTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hammersley
