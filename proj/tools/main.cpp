#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hammersley/config.hpp"
#include "hammersley/estimators.hpp"
#include "hammersley/lpp.hpp"
#include "hammersley/point_cloud.hpp"
#include "hammersley/report.hpp"

namespace hs = hammersley;

namespace {

std::string manifest_text(const hs::RunConfig& cfg) {
  std::ostringstream os;
  auto real = [](double v) { return hs::format_real(v); };
  auto is_set = [](double v) { return v == v; };
  os << "[" << cfg.experiment << "]\n";
  if (!cfg.law.empty()) os << "law=" << cfg.law << "\n";
  if (is_set(cfg.law_value)) os << "law-value=" << real(cfg.law_value) << "\n";
  if (is_set(cfg.law_p)) os << "law-p=" << real(cfg.law_p) << "\n";
  if (is_set(cfg.law_rate)) os << "law-rate=" << real(cfg.law_rate) << "\n";
  if (is_set(cfg.law_lo)) os << "law-lo=" << real(cfg.law_lo) << "\n";
  if (is_set(cfg.law_hi)) os << "law-hi=" << real(cfg.law_hi) << "\n";
  if (!cfg.law_samples.empty()) {
    os << "law-samples=";
    for (std::size_t i = 0; i < cfg.law_samples.size(); ++i)
      os << (i ? "," : "") << real(cfg.law_samples[i]);
    os << "\n";
  }
  if (is_set(cfg.r)) os << "r=" << real(cfg.r) << "\n";
  if (!cfg.radii.empty()) {
    os << "radii=";
    for (std::size_t i = 0; i < cfg.radii.size(); ++i)
      os << (i ? "," : "") << real(cfg.radii[i]);
    os << "\n";
  }
  if (is_set(cfg.alpha)) os << "alpha=" << real(cfg.alpha) << "\n";
  if (is_set(cfg.delta)) os << "delta=" << real(cfg.delta) << "\n";
  if (is_set(cfg.lambda)) os << "lambda=" << real(cfg.lambda) << "\n";
  if (cfg.experiment == "rays" || cfg.experiment == "coalesce" ||
      cfg.experiment == "busemann") {
    os << "ax=" << real(cfg.ax) << "\n";
    os << "at=" << real(cfg.at) << "\n";
    if (is_set(cfg.bx)) os << "bx=" << real(cfg.bx) << "\n";
    if (is_set(cfg.bt)) os << "bt=" << real(cfg.bt) << "\n";
  }
  if (cfg.experiment == "oracle-suite") {
    os << "clouds=" << cfg.clouds << "\n";
    os << "max-points=" << cfg.max_points << "\n";
  }
  if (cfg.experiment == "dump-cloud") {
    os << "width=" << real(cfg.width) << "\n";
    os << "height=" << real(cfg.height) << "\n";
    os << "intensity=" << real(cfg.intensity) << "\n";
    if (is_set(cfg.field_x)) os << "field-x=" << real(cfg.field_x) << "\n";
    if (is_set(cfg.field_t)) os << "field-t=" << real(cfg.field_t) << "\n";
  }
  if (cfg.replicas > 0) os << "replicas=" << cfg.replicas << "\n";
  os << "seed=" << cfg.seed << "\n";
  os << "out=" << cfg.out << "\n";
  os << "threads=" << cfg.threads << "\n";
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_experiment(const hs::RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::cerr << "[hammersley] " << cfg.experiment << ": seed=" << cfg.seed
            << " threads=" << hs::resolve_threads(cfg.threads) << "\n";

  hs::EstimatorReport rep;
  hs::RawTable raw;
  int exit_code = 0;

  if (cfg.experiment == "oracle-suite") {
    const hs::OracleSuiteResult res =
        hs::oracle_suite(cfg.clouds, cfg.max_points, cfg.seed, &raw);
    rep.name = "oracle-suite";
    rep.replicas = res.clouds;
    rep.mean = double(res.mismatches);
    rep.ci95 = {rep.mean, rep.mean};
    rep.aux["mismatches"] = double(res.mismatches);
    rep.aux["clouds"] = double(res.clouds);
    if (res.mismatches > 0) exit_code = 1;
  } else if (cfg.experiment == "dump-cloud") {
    const hs::PointCloud cloud =
        hs::PointCloud::sample({0.0, cfg.width, 0.0, cfg.height},
                               cfg.intensity, cfg.build_law(), cfg.seed);
    std::filesystem::create_directories(cfg.out);
    write_file(std::filesystem::path(cfg.out) / "cloud.txt", cloud.dump());
    rep.name = "dump-cloud";
    rep.replicas = 1;
    rep.mean = double(cloud.size());
    rep.ci95 = {rep.mean, rep.mean};
    rep.aux["points"] = double(cloud.size());
    if (cfg.field_x == cfg.field_x && cfg.field_t == cfg.field_t) {
      // debug dump of the passage field from the given source
      const hs::PassageField field =
          hs::passage_field(cloud, {cfg.field_x, cfg.field_t});
      std::ostringstream os;
      os << "x t w value pred_index\n";
      for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (!field.covers(i)) continue;
        const hs::MarkedPoint& p = cloud.points()[i];
        os << hs::format_real(p.x) << " " << hs::format_real(p.t) << " "
           << hs::format_real(p.w) << " " << hs::format_real(field.value[i])
           << " " << field.pred[i] << "\n";
      }
      write_file(std::filesystem::path(cfg.out) / "field.txt", os.str());
      rep.aux["field_points"] = double(
          std::count_if(field.value.begin(), field.value.end(),
                        [](double v) { return v == v; }));
    }
  } else {
    const hs::WeightLaw law = cfg.build_law();
    if (cfg.experiment == "gamma") {
      rep = hs::estimate_gamma(law, cfg.r, cfg.replicas, cfg.seed,
                               cfg.threads, &raw);
    } else if (cfg.experiment == "martin") {
      rep = hs::martin_bound_check(law, cfg.r, cfg.replicas, cfg.seed,
                                   cfg.threads, &raw);
    } else if (cfg.experiment == "fluct") {
      rep = hs::fluctuation_scan(law, cfg.radii, cfg.replicas, cfg.seed,
                                 cfg.threads, &raw);
    } else if (cfg.experiment == "scale") {
      rep = hs::scale_invariance_test(law, cfg.r, cfg.lambda, cfg.replicas,
                                      cfg.seed, cfg.threads, &raw);
    } else if (cfg.experiment == "rays") {
      rep = hs::ray_stabilization_scan(law, cfg.alpha, cfg.radii,
                                       {cfg.ax, cfg.at}, cfg.replicas,
                                       cfg.seed, cfg.threads, &raw);
    } else if (cfg.experiment == "coalesce") {
      rep = hs::coalescence_scan(law, cfg.alpha, cfg.radii, {cfg.ax, cfg.at},
                                 {cfg.bx, cfg.bt}, cfg.replicas, cfg.seed,
                                 cfg.threads, &raw);
    } else if (cfg.experiment == "busemann") {
      rep = hs::busemann_scan(law, cfg.alpha, cfg.radii, {cfg.ax, cfg.at},
                              {cfg.bx, cfg.bt}, cfg.replicas, cfg.seed,
                              cfg.threads, &raw);
    } else if (cfg.experiment == "straightness") {
      rep = hs::straightness_scan(law, cfg.radii, cfg.delta, cfg.replicas,
                                  cfg.seed, cfg.threads, &raw);
    } else if (cfg.experiment == "pathcount") {
      rep = hs::path_count_tail(law, cfg.r, cfg.replicas, cfg.seed,
                                cfg.threads, &raw);
    }
  }

  std::filesystem::create_directories(cfg.out);
  const std::filesystem::path out(cfg.out);
  write_file(out / "manifest.cfg", manifest_text(cfg));
  if (!raw.columns.empty()) write_file(out / "raw.csv", raw.to_csv());
  const std::string line = rep.to_line();
  write_file(out / "report.txt", line + "\n");
  std::cout << line << "\n";

  const auto dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::cerr << "[hammersley] " << cfg.experiment << ": done in " << dt
            << " s, outputs in " << cfg.out << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  hs::RunConfig cfg;
  CLI::App app{
      "Weighted Hammersley last-passage percolation experiments.\n"
      "Precedence: command-line flags override config-file keys; the\n"
      "HAMMERSLEY_THREADS environment variable overrides the thread count\n"
      "last. Progress goes to stderr; stdout carries the report record."};
  app.set_config("--config", "",
                 "key=value config file with one [experiment] section");

  auto add_law = [&](CLI::App* sub) {
    sub->add_option("--law", cfg.law,
                    "law kind: dirac|bernoulli|exponential|uniform|empirical");
    sub->add_option("--law-value", cfg.law_value, "dirac: atom location");
    sub->add_option("--law-p", cfg.law_p, "bernoulli: success probability");
    sub->add_option("--law-rate", cfg.law_rate, "exponential: rate");
    sub->add_option("--law-lo", cfg.law_lo, "uniform: lower endpoint");
    sub->add_option("--law-hi", cfg.law_hi, "uniform: upper endpoint");
    sub->add_option("--law-samples", cfg.law_samples,
                    "empirical: sample values")
        ->delimiter(',');
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--replicas", cfg.replicas, "independent replicas");
    sub->add_option("--seed", cfg.seed, "64-bit master seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  };
  auto add_radii = [&](CLI::App* sub) {
    sub->add_option("--radii", cfg.radii, "increasing radius schedule")
        ->delimiter(',');
  };

  std::map<std::string, CLI::App*> subs;
  for (const std::string& name : hs::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->configurable();
    sub->fallthrough();
    subs[name] = sub;
  }
  subs["gamma"]->description("estimate the shape constant from L(0,(r,r))/r");
  subs["martin"]->description("check the sqrt-tail upper bound on the shape constant");
  subs["fluct"]->description("standard deviation of L across radii and its scaling exponent");
  subs["scale"]->description("two-sample KS test of the volume-preserving map symmetry");
  subs["rays"]->description("alpha-ray stabilization frequency");
  subs["coalesce"]->description("coalescence of rays from two starts");
  subs["busemann"]->description("Busemann increments between two starts");
  subs["straightness"]->description("geodesic transversal wandering and cone confinement");
  subs["pathcount"]->description("geodesic cardinality tail");
  subs["oracle-suite"]->description("solver vs exhaustive enumeration on small clouds");
  subs["dump-cloud"]->description("sample one cloud and write its point table");

  for (const char* name : {"gamma", "martin", "pathcount"}) {
    add_law(subs[name]);
    add_common(subs[name]);
    subs[name]->add_option("--r", cfg.r, "corner scale");
  }
  add_law(subs["fluct"]);
  add_common(subs["fluct"]);
  add_radii(subs["fluct"]);
  add_law(subs["scale"]);
  add_common(subs["scale"]);
  subs["scale"]->add_option("--r", cfg.r, "corner scale");
  subs["scale"]->add_option("--lambda", cfg.lambda, "map parameter");
  for (const char* name : {"rays", "coalesce", "busemann"}) {
    add_law(subs[name]);
    add_common(subs[name]);
    add_radii(subs[name]);
    subs[name]->add_option("--alpha", cfg.alpha, "ray direction in (0, pi/2)");
    subs[name]->add_option("--ax", cfg.ax, "start x");
    subs[name]->add_option("--at", cfg.at, "start t");
  }
  for (const char* name : {"coalesce", "busemann"}) {
    subs[name]->add_option("--bx", cfg.bx, "second start x");
    subs[name]->add_option("--bt", cfg.bt, "second start t");
  }
  add_law(subs["straightness"]);
  add_common(subs["straightness"]);
  add_radii(subs["straightness"]);
  subs["straightness"]->add_option("--delta", cfg.delta,
                                   "straightness exponent in (0, 1/4)");
  add_common(subs["oracle-suite"]);
  subs["oracle-suite"]->add_option("--clouds", cfg.clouds, "number of clouds");
  subs["oracle-suite"]->add_option("--max-points", cfg.max_points,
                                   "cap on points per cloud");
  add_law(subs["dump-cloud"]);
  subs["dump-cloud"]->add_option("--width", cfg.width, "region width");
  subs["dump-cloud"]->add_option("--height", cfg.height, "region height");
  subs["dump-cloud"]->add_option("--intensity", cfg.intensity,
                                 "Poisson intensity");
  subs["dump-cloud"]->add_option("--seed", cfg.seed, "64-bit master seed");
  subs["dump-cloud"]->add_option("--field-x", cfg.field_x,
                                 "passage-field source x (debug dump)");
  subs["dump-cloud"]->add_option("--field-t", cfg.field_t,
                                 "passage-field source t (debug dump)");
  subs["dump-cloud"]->add_option("--out", cfg.out, "output directory");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "check the configuration and exit without running");
  validate_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  if (const char* env = std::getenv("HAMMERSLEY_THREADS"))
    cfg.threads = std::atoi(env);

  std::vector<std::string> chosen;
  for (const std::string& name : hs::experiment_names())
    if (subs[name]->parsed()) chosen.push_back(name);
  if (chosen.empty()) {
    std::cerr << "config error: no experiment selected (see --help)\n";
    return 2;
  }
  if (chosen.size() > 1) {
    std::cerr << "config error: multiple experiments selected (";
    for (std::size_t i = 0; i < chosen.size(); ++i)
      std::cerr << (i ? ", " : "") << chosen[i];
    std::cerr << ")\n";
    return 2;
  }
  cfg.experiment = chosen.front();

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  if (validate_cmd->parsed()) {
    std::cout << "ok " << cfg.experiment << "\n";
    return 0;
  }

  try {
    return run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
