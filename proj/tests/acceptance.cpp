// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any
// criterion fails.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hammersley/estimators.hpp"
#include "hammersley/lpp.hpp"
#include "hammersley/rays.hpp"
#include "hammersley/rng.hpp"
#include "hammersley/stats.hpp"

namespace fs = std::filesystem;
using namespace hammersley;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
std::string g_cli;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const std::vector<WeightLaw>& law_mix() {
  static const std::vector<WeightLaw> laws = {
      WeightLaw::dirac(1.0), WeightLaw::exponential(1.0),
      WeightLaw::uniform_interval(0.5, 1.5), WeightLaw::bernoulli(0.3),
      WeightLaw::empirical({0.25, 0.5, 1.0, 2.0})};
  return laws;
}

// 1. Solver value equals exhaustive enumeration exactly on 1000 small
// clouds with mixed laws; the emitted geodesic is an optimal chain and is
// pointwise lowest. Runtime under 10 s.
Outcome criterion_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const OracleSuiteResult res = oracle_suite(1000, 10, 0xAC01);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {res.mismatches == 0 && secs < 10.0,
          fmt("%d clouds, %d mismatches, %.2f s", res.clouds, res.mismatches,
              secs)};
}

// 2. Superadditivity on 10^4 random triples across 100 clouds, and exact
// invariance of L under the volume-preserving map, five lambda values.
Outcome criterion_superadd_map() {
  const Rect region{0, 20, 0, 20};
  long super_checks = 0, super_viol = 0, map_checks = 0, map_viol = 0;
  for (std::uint64_t c = 0; c < 100; ++c) {
    const WeightLaw& law = law_mix()[c % law_mix().size()];
    const PointCloud cloud = PointCloud::sample(region, 1.0, law, 0xAC02 + c);
    RngStream rng(derive_seed(0xAC02, 1, c));
    for (int k = 0; k < 100; ++k) {
      const Point2 p{rng.next_unit() * 20.0, rng.next_unit() * 20.0};
      const Point2 q{p.x + rng.next_unit() * (20.0 - p.x),
                     p.t + rng.next_unit() * (20.0 - p.t)};
      const Point2 z{p.x + rng.next_unit() * (q.x - p.x),
                     p.t + rng.next_unit() * (q.t - p.t)};
      ++super_checks;
      if (last_passage(cloud, p, q) <
          last_passage(cloud, p, z) + last_passage(cloud, z, q))
        ++super_viol;
    }
    const double base = last_passage(cloud, {0, 0}, {20, 20});
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const Point2 shift{2.0, -3.0};
      const PointCloud mapped = apply_hyperbolic_map(cloud, lambda, shift);
      ++map_checks;
      if (last_passage(mapped, shift,
                       {shift.x + lambda * 20.0, shift.t + 20.0 / lambda}) !=
          base)
        ++map_viol;
    }
  }
  return {super_viol == 0 && map_viol == 0,
          fmt("%ld triples, %ld violations; %ld map checks, %ld mismatches",
              super_checks, super_viol, map_checks, map_viol)};
}

// 3. Unit-weight shape constant: increasing in r within 2 combined standard
// errors, gamma(1000) in [1.90, 2.00] with std error under 0.01.
Outcome criterion_gamma() {
  const std::vector<double> rs{250, 500, 1000};
  std::vector<EstimatorReport> reps;
  for (std::size_t i = 0; i < rs.size(); ++i)
    reps.push_back(
        estimate_gamma(WeightLaw::dirac(1.0), rs[i], 200, 0xAC03 + i));
  bool increasing = true;
  for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
    const double se = std::sqrt(reps[i].std_error * reps[i].std_error +
                                reps[i + 1].std_error * reps[i + 1].std_error);
    if (!(reps[i + 1].mean - reps[i].mean > -2.0 * se)) increasing = false;
  }
  const EstimatorReport& last = reps.back();
  const bool in_range = last.mean >= 1.90 && last.mean <= 2.00;
  const bool tight = last.std_error < 0.01;
  return {increasing && in_range && tight,
          fmt("gamma(250)=%.4f gamma(500)=%.4f gamma(1000)=%.4f se=%.5f",
              reps[0].mean, reps[1].mean, reps[2].mean, last.std_error)};
}

// 4. Thinning identity: the Bernoulli(1/4) estimate at r=2000 matches half
// the unit-weight estimate at the matched scale r=1000 within 3 combined
// standard errors.
Outcome criterion_thinning() {
  const EstimatorReport bern =
      estimate_gamma(WeightLaw::bernoulli(0.25), 2000, 200, 0xAC04);
  const EstimatorReport unit =
      estimate_gamma(WeightLaw::dirac(1.0), 1000, 200, 0xAC05);
  const double diff = std::fabs(bern.mean - 0.5 * unit.mean);
  const double se = std::sqrt(bern.std_error * bern.std_error +
                              0.25 * unit.std_error * unit.std_error);
  return {diff <= 3.0 * se,
          fmt("bern=%.5f 0.5*unit=%.5f |diff|=%.5f 3se=%.5f", bern.mean,
              0.5 * unit.mean, diff, 3.0 * se)};
}

// 5. Exponential-weight estimate stays below gamma(1) * sqrt-tail integral
// plus 3 standard errors.
Outcome criterion_martin() {
  const EstimatorReport rep =
      martin_bound_check(WeightLaw::exponential(1.0), 500, 200, 0xAC06);
  return {rep.aux_at("pass") == 1.0,
          fmt("mean=%.4f bound=%.4f slack=%.4f", rep.mean, rep.aux_at("bound"),
              rep.aux_at("slack"))};
}

// 6. Volume-preserving map symmetry: two-sample KS p-value above 0.001 for
// lambda in {1, 2, 4} at r=500 with 400 replicas per arm.
Outcome criterion_scale() {
  std::string detail;
  bool ok = true;
  int i = 0;
  for (double lambda : {1.0, 2.0, 4.0}) {
    const EstimatorReport rep = scale_invariance_test(
        WeightLaw::dirac(1.0), 500, lambda, 400, 0xAC07 + i++);
    const double p = rep.aux_at("ks_pvalue");
    if (!(p > 0.001)) ok = false;
    detail += fmt("p(%g)=%.4f ", lambda, p);
  }
  return {ok, detail};
}

// 7. Fluctuation scaling: fitted exponent of sd vs r below 1/2 and the
// diffusive envelope holds across radii {128..2048}.
Outcome criterion_fluct() {
  const EstimatorReport rep = fluctuation_scan(
      WeightLaw::dirac(1.0), {128, 256, 512, 1024, 2048}, 300, 0xAC08);
  const double expo = rep.aux_at("exponent");
  const bool ok = expo < 0.5 && rep.aux_at("diffusive_ok") == 1.0;
  return {ok, fmt("exponent=%.3f (se %.3f) diffusive_ok=%g", expo,
                  rep.std_error, rep.aux_at("diffusive_ok"))};
}

// 8. Geodesic cardinality: no replica exceeds 2(log2 + 2e) r points at
// r=100 over 1000 replicas; mean ratio in [1.8, 2.1] at r=500.
Outcome criterion_pathcount() {
  const EstimatorReport tail =
      path_count_tail(WeightLaw::dirac(1.0), 100, 1000, 0xAC09);
  const EstimatorReport mean_rep =
      path_count_tail(WeightLaw::dirac(1.0), 500, 300, 0xAC0A);
  const bool ok = tail.aux_at("violations") == 0.0 && mean_rep.mean >= 1.8 &&
                  mean_rep.mean <= 2.1;
  return {ok, fmt("violations=%g max_ratio=%.3f mean_ratio(500)=%.4f",
                  tail.aux_at("violations"), tail.aux_at("max_ratio"),
                  mean_rep.mean)};
}

// 9. Straightness: wandering exponent below 1 and cone containment at the
// largest radius in at least 90% of replicas (delta = 0.2).
Outcome criterion_straightness() {
  const EstimatorReport rep =
      straightness_scan(WeightLaw::dirac(1.0), {128, 256, 512, 1024, 2048},
                        0.2, 100, 0xAC0B);
  const double expo = rep.aux_at("wander_exponent");
  const double cone = rep.aux_at("cone_ok");
  return {expo < 1.0 && cone >= 0.9,
          fmt("wander_exponent=%.3f cone_ok=%.2f", expo, cone)};
}

// 10. Rays and coalescence at alpha = pi/4 from (0,0) and (30,0), schedule
// {500,1000,2000}, 100 replicas: stabilization in at least 90% of replicas;
// coalescence in at least 90% of stabilized replicas; Busemann antisymmetry
// and the cocycle identity (third start (15,0)) exact wherever all rays
// coalesce.
Outcome criterion_rays() {
  const std::vector<double> radii{500, 1000, 2000};
  const Rect region = ray_experiment_region(radii);
  const int replicas = 100;
  std::atomic<int> stabilized{0}, coalesced_stab{0}, all_coal{0};
  std::atomic<int> antisym_bad{0}, cocycle_bad{0};
  parallel_replicas(replicas, 0, [&](int i) {
    const PointCloud cloud =
        PointCloud::sample(region, 1.0, WeightLaw::dirac(1.0),
                           derive_seed(0xAC0C, 0, std::uint64_t(i)));
    const auto rx = approx_alpha_ray(cloud, {0, 0}, kQuarterPi, radii);
    const auto ry = approx_alpha_ray(cloud, {30, 0}, kQuarterPi, radii);
    const bool stab = rx.stabilized && ry.stabilized;
    if (stab) {
      stabilized.fetch_add(1);
      if (coalescence_point(rx, ry)) coalesced_stab.fetch_add(1);
    }
    const auto rz = approx_alpha_ray(cloud, {15, 0}, kQuarterPi, radii);
    const auto bxy = busemann_from_rays(rx, ry);
    const auto byz = busemann_from_rays(ry, rz);
    const auto bxz = busemann_from_rays(rx, rz);
    if (bxy && byz && bxz) {
      all_coal.fetch_add(1);
      const auto byx = busemann_from_rays(ry, rx);
      if (!byx || byx->value != -bxy->value) antisym_bad.fetch_add(1);
      if (bxz->value != bxy->value + byz->value) cocycle_bad.fetch_add(1);
    }
  });
  const double stab_frac = double(stabilized.load()) / replicas;
  const double coal_frac =
      stabilized.load() > 0
          ? double(coalesced_stab.load()) / double(stabilized.load())
          : 0.0;
  const bool ok = stab_frac >= 0.9 && coal_frac >= 0.9 &&
                  antisym_bad.load() == 0 && cocycle_bad.load() == 0;
  return {ok, fmt("stabilized=%.0f%% coalesced|stab=%.0f%% all3=%d "
                  "antisym_bad=%d cocycle_bad=%d",
                  100.0 * stab_frac, 100.0 * coal_frac, all_coal.load(),
                  antisym_bad.load(), cocycle_bad.load())};
}

// 11. Determinism: rerunning an experiment from its emitted manifest
// reproduces the raw table byte for byte.
Outcome criterion_determinism() {
  if (g_cli.empty()) return {false, "no CLI binary path given"};
  const fs::path dir = fs::temp_directory_path() / "hammersley_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto sh = [&](const std::string& args) {
    const std::string cmd = "cd '" + dir.string() + "' && '" + g_cli + "' " +
                            args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"gamma",
       "gamma --law exponential --law-rate 1 --r 60 --replicas 24 --seed 17"},
      {"pathcount",
       "pathcount --law dirac --law-value 1 --r 40 --replicas 16 --seed 5"}};
  for (const auto& [name, args] : runs) {
    if (sh(args + " --out " + name + "_a") != 0 ||
        sh(name + " --config " + name + "_a/manifest.cfg --out " + name +
           "_b") != 0) {
      ok = false;
      detail += name + ": run failed; ";
      continue;
    }
    const std::string a = slurp(dir / (name + "_a") / "raw.csv");
    const std::string b = slurp(dir / (name + "_b") / "raw.csv");
    const bool same = !a.empty() && a == b;
    ok = ok && same;
    detail += name + (same ? ": identical; " : ": DIFFER; ");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = fs::absolute(argv[1]).string();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> crits = {
      {"oracle-equivalence", criterion_oracle},
      {"superadditivity-and-map-invariance", criterion_superadd_map},
      {"shape-constant", criterion_gamma},
      {"thinning-identity", criterion_thinning},
      {"martin-bound", criterion_martin},
      {"scale-invariance-ks", criterion_scale},
      {"fluctuation-scaling", criterion_fluct},
      {"geodesic-cardinality", criterion_pathcount},
      {"straightness", criterion_straightness},
      {"rays-and-coalescence", criterion_rays},
      {"determinism", criterion_determinism},
  };

  // optional selector: run a single criterion by its 1-based number
  std::size_t only = 0;
  if (argc > 2) {
    only = std::size_t(std::atoi(argv[2]));
    if (only < 1 || only > crits.size()) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[2]);
      return 2;
    }
  }

  int failures = 0;
  for (std::size_t i = 0; i < crits.size(); ++i) {
    if (only != 0 && i + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = crits[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %02zu %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL",
                i + 1, crits[i].first.c_str(), secs, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  const std::size_t ran = only != 0 ? 1 : crits.size();
  std::printf("%zu/%zu criteria passed\n", ran - std::size_t(failures), ran);
  return failures == 0 ? 0 : 1;
}
