// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fppa/asymptotics.hpp"
#include "fppa/config.hpp"
#include "fppa/experiment.hpp"
#include "fppa/metrics.hpp"
#include "fppa/pa_graph.hpp"
#include "fppa/summary.hpp"
#include "fppa/tail_fit.hpp"
#include "fppa/weights.hpp"
#include "oracles.hpp"

using namespace fppa;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

const json kExp = {{"family", "exponential"}, {"rate", 1.0}};
const json kShiftedExp = {{"family", "shifted"}, {"shift", 1.0}, {"base", kExp}};
const json kFpa21 = {{"variant", "fpa"}, {"m", 2}, {"delta", -1.0}};

std::vector<ResultRecord> run(json config) {
  return run_experiment(config_from_json(config));
}

// Values of a top-level distance or a numeric extra, per size, over connected records.
std::vector<double> column(const std::vector<ResultRecord>& records, Vertex t, const std::string& name) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.t != t || r.disconnected) continue;
    if (name == "d_L" && r.d_L) out.push_back(*r.d_L);
    else if (name == "d_G" && r.d_G) out.push_back(*r.d_G);
    else if (name == "d_H" && r.d_H) out.push_back(*r.d_H);
    else if (r.extras.contains(name) && r.extras.at(name).is_number()) out.push_back(r.extras.at(name).get<double>());
  }
  return out;
}

Outcome exact_oracle() {
  const auto start = Clock::now();
  Rng rng(101);
  std::size_t pairs = 0, mismatches = 0;
  const int instances = 500;
  for (int i = 0; i < instances; ++i) {
    const auto t = static_cast<Vertex>(2 + rng.below(9));
    ModelParams model;
    switch (i % 3) {
      case 0: {
        const int m = 1 + static_cast<int>(rng.below(3));
        model = FpaParams{m, -m + 0.05 + 2.0 * rng.uniform()};
        break;
      }
      case 1:
        model = VpaParams{0.51 + 0.48 * rng.uniform(), 0.1 + 0.9 * rng.uniform()};
        break;
      default:
        model = GvpaParams{AttachmentRule::tabulated({0.35 + 0.35 * rng.uniform(), 1.3, 1.9, 2.3})};
    }
    const auto g = assign_weights(generate(model, t, rng.next()), WeightDistribution::exponential(1.0), rng.next());
    DistanceEngine engine(g);
    for (Vertex u = 1; u <= t; ++u) {
      for (Vertex v = 1; v <= t; ++v) {
        const auto ref = testing::brute_force_paths(g, u, v);
        const auto got = engine.weighted_distance(u, v);
        const bool ok = engine.graph_distance(u, v) == ref.d_G && got.hops == ref.d_H &&
                        (!ref.d_H || got.weight == ref.d_L);
        ++pairs;
        if (!ok) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream d;
  d << instances << " instances, " << pairs << " ordered pairs, " << mismatches << " mismatches, " << fmt("%.1f s", secs);
  return {mismatches == 0 && secs < 30.0, d.str()};
}

Outcome unit_collapse() {
  const auto g = assign_weights(generate_fpa({1, -0.5}, 10000, 2), WeightDistribution::constant(1.0), 3);
  DistanceEngine engine(g);
  Rng rng(5);
  int connected = 0, bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [u, v] = sample_typical_pair(g.size(), rng);
    const auto p = engine.weighted_distance(u, v);
    const auto d_G = engine.graph_distance(u, v);
    if (!d_G) continue;
    ++connected;
    if (!(p.hops == d_G && p.weight == static_cast<double>(*d_G))) ++bad;
  }
  return {bad == 0 && connected > 0, std::to_string(connected) + " connected pairs, " + std::to_string(bad) + " differ"};
}

Outcome sampler_exactness() {
  double worst = 0.0;
  for (auto [m, delta] : {std::pair{1, 0.0}, {1, -0.5}, {2, -1.0}, {3, 2.5}, {4, -3.9}}) {
    FpaSampler sampler(m, delta);
    Rng rng(static_cast<std::uint64_t>(m * 100 + delta * 10 + 1000));
    std::vector<std::uint32_t> indeg(201, 0);
    for (Vertex s = 2; s <= 200; ++s) {
      for (int j = 1; j <= m; ++j) {
        const auto fast = sampler.next_target_law(s);
        const auto slow = testing::naive_fpa_law(indeg, s, m, delta);
        for (Vertex v = 1; v < s; ++v) worst = std::max(worst, std::abs(fast[v] - slow[v]));
        ++indeg[sampler.draw(s, rng)];
      }
    }
  }
  int hits = 0;
  const int runs = 10000;
  for (int r = 0; r < runs; ++r) hits += generate_fpa({1, 0.0}, 3, 900000 + r).edge(1).dst == 1 ? 1 : 0;
  const double p = static_cast<double>(hits) / runs;
  return {worst < 1e-9 && std::abs(p - 2.0 / 3.0) <= 0.02,
          "max law error " + fmt("%.2e", worst) + ", P(3->1) = " + fmt("%.4f", p)};
}

Outcome degree_tail() {
  const auto start = Clock::now();
  const auto records = run({{"kind", "degree_tail"},
                            {"model", {{"variant", "fpa"}, {"m", 1}, {"delta", -0.5}}},
                            {"sizes", {200000}},
                            {"weights", kExp},
                            {"replicas", 5},
                            {"seed", 4}});
  double sum = 0.0;
  for (const auto& r : records) sum += r.extras.at("tau_hat").get<double>();
  const double mean = sum / static_cast<double>(records.size());
  Rng rng(8);
  std::vector<double> pareto(100000);
  for (auto& x : pareto) x = std::pow(rng.uniform(), -1.0 / 1.5);
  const double control = fit_tail_exponent(pareto).tau_hat;
  const double secs = seconds_since(start);
  return {records.size() == 5 && mean >= 2.15 && mean <= 2.85 && std::abs(control - 2.5) <= 0.1 && secs < 120.0,
          "mean tau_hat " + fmt("%.3f", mean) + " over 5 seeds, Pareto control " + fmt("%.3f", control) + ", " +
              fmt("%.1f s", secs)};
}

Outcome explosive_flatness() {
  const auto records = run({{"kind", "distance_scaling"},
                            {"model", kFpa21},
                            {"sizes", {10000, 100000}},
                            {"weights", kExp},
                            {"pairs", 100},
                            {"replicas", 3},
                            {"seed", 5}});
  const auto l4 = summarize(column(records, 10000, "d_L")), l5 = summarize(column(records, 100000, "d_L"));
  const auto g4 = summarize(column(records, 10000, "d_G")), g5 = summarize(column(records, 100000, "d_G"));
  const bool flat = l5.median - l4.median <= 0.15 * l4.median;
  const bool grows = g5.median - g4.median >= 1.0;
  std::ostringstream d;
  d << "pairs " << l4.count << "/" << l5.count << ", median d_L " << fmt("%.3f", l4.median) << " -> "
    << fmt("%.3f", l5.median) << ", median d_G " << g4.median << " -> " << g5.median;
  return {flat && grows && l4.count >= 300 && l5.count >= 300, d.str()};
}

struct ConservativeRun {
  std::vector<ResultRecord> records;
  std::vector<Vertex> sizes{10000, 100000, 1000000};
};

ConservativeRun conservative_run() {
  ConservativeRun c;
  c.records = run({{"kind", "distance_scaling"},
                   {"model", kFpa21},
                   {"sizes", c.sizes},
                   {"weights", kShiftedExp},
                   {"pairs", 100},
                   {"replicas", 10},
                   {"seed", 6}});
  return c;
}

Outcome conservative_growth(const ConservativeRun& c) {
  bool ok = true;
  double prev_median = -INFINITY, prev_iqr = INFINITY;
  std::ostringstream d;
  for (Vertex t : c.sizes) {
    const auto dl = summarize(column(c.records, t, "d_L"));
    const auto ratio = summarize(column(c.records, t, "dL_over_2Qt"));
    ok = ok && dl.median > prev_median && ratio.median >= 0.3 && ratio.median <= 1.3 && ratio.iqr() <= prev_iqr;
    prev_median = dl.median;
    prev_iqr = ratio.iqr();
    d << "t=" << t << ": median d_L " << fmt("%.3f", dl.median) << ", ratio " << fmt("%.3f", ratio.median)
      << " (IQR " << fmt("%.3f", ratio.iqr()) << "); ";
  }
  return {ok, d.str()};
}

Outcome hopcount_scaling(const ConservativeRun& c) {
  bool ok = true;
  std::ostringstream d;
  for (Vertex t : {Vertex{100000}, Vertex{1000000}}) {
    const auto ratio = summarize(column(c.records, t, "dH_over_2Kstar"));
    ok = ok && ratio.median >= 0.3 && ratio.median <= 1.3;
    d << "t=" << t << ": median d_H/2k* " << fmt("%.3f", ratio.median) << " (k*=" << k_star(t, 2.5) << "); ";
  }
  return {ok, d.str()};
}

Outcome beta_centering() {
  const auto records = run({{"kind", "beta_k_centering"},
                            {"model", kFpa21},
                            {"sizes", {1000000}},
                            {"weights", kShiftedExp},
                            {"pairs", 50},
                            {"k_max", 6},
                            {"seed", 8}});
  std::vector<double> medians;
  std::ostringstream d;
  d << "medians of beta_k - main term:";
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<double> xs;
    for (const auto& r : records) {
      const auto& v = r.extras.at("centered").at(k);
      if (v.is_number()) xs.push_back(v.get<double>());
    }
    medians.push_back(summarize(xs).median);
    d << " " << fmt("%.3f", medians.back());
  }
  const auto law = WeightDistribution::shifted(WeightDistribution::exponential(1.0), 1.0);
  const double scale = law.quantile(0.75) - law.quantile(0.25);
  const double window = *std::max_element(medians.begin(), medians.end()) -
                        *std::min_element(medians.begin(), medians.end());
  d << "; window " << fmt("%.3f", window) << " vs bound 4*IQR(L) = " << fmt("%.3f", 4.0 * scale);
  return {window <= 4.0 * scale && std::all_of(medians.begin(), medians.end(), [](double x) { return std::isfinite(x); }),
          d.str()};
}

Outcome classifier_table() {
  const auto start = Clock::now();
  const auto e = WeightDistribution::exponential(1.0);
  const std::vector<std::pair<WeightDistribution, UniversalityClass>> table = {
      {e, UniversalityClass::Explosive},
      {WeightDistribution::uniform(0.0, 1.0), UniversalityClass::Explosive},
      {WeightDistribution::weibull(2.0, 1.0), UniversalityClass::Explosive},
      {WeightDistribution::constant(0.7), UniversalityClass::Conservative},
      {WeightDistribution::shifted(e, 1.0), UniversalityClass::Conservative},
      {WeightDistribution::shifted(WeightDistribution::uniform(0.0, 1.0), 0.01), UniversalityClass::Conservative},
      {WeightDistribution::uniform(0.5, 2.0), UniversalityClass::Conservative},
  };
  int wrong = 0;
  for (const auto& [d, expected] : table) wrong += explosion_characteristic(d).universality == expected ? 0 : 1;
  const double secs = seconds_since(start);
  return {wrong == 0 && secs < 1.0,
          std::to_string(table.size()) + " laws, " + std::to_string(wrong) + " misclassified, " + fmt("%.4f s", secs)};
}

struct GreedyTally {
  std::size_t trials = 0, successes = 0, audit_failures = 0, above_total = 0;
  int k_t = 0;
};

GreedyTally greedy_tally(const json& model, double s0, std::uint64_t seed) {
  const auto records = run({{"kind", "greedy_validation"},
                            {"model", model},
                            {"sizes", {100000}},
                            {"alpha", 0.5},
                            {"weights", kExp},
                            {"s0", s0},
                            {"pairs", 100},
                            {"seed", seed}});
  GreedyTally g;
  for (const auto& r : records) {
    ++g.trials;
    g.k_t = r.extras.at("K_t").get<int>();
    if (!r.extras.at("success").get<bool>()) continue;
    ++g.successes;
    if (!r.extras.at("audit_ok").get<bool>()) ++g.audit_failures;
    if (!r.extras.at("within_total").get<bool>()) ++g.above_total;
  }
  return g;
}

std::string describe(const GreedyTally& g) {
  std::ostringstream d;
  d << "K_t=" << g.k_t << ", " << g.successes << "/" << g.trials << " reached the core, " << g.audit_failures
    << " audit failures, " << g.above_total << " with d_L above the path weight";
  return d.str();
}

Outcome greedy_paths() {
  const auto g = greedy_tally({{"variant", "fpa"}, {"m", 1}, {"delta", -0.5}}, 50, 10);
  const bool ok = g.audit_failures == 0 && g.above_total == 0 && g.successes * 10 >= g.trials * 9;
  std::string detail = describe(g);
  if (g.k_t == 0) detail += " (s0 is already above the layer cap, so no step is taken)";
  const auto extra = greedy_tally(kFpa21, 4, 11);
  std::printf("info: greedy on FPA(2,-1) with s0=4: %s\n", describe(extra).c_str());
  return {ok, detail};
}

Outcome invariant_suites() {
  const auto start = Clock::now();
  const auto log = (std::filesystem::temp_directory_path() / "fppa_invariants.log").string();
  const std::string cmd = std::string("\"") + FPPA_INVARIANTS_BIN + "\" > \"" + log + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  const double secs = seconds_since(start);
  return {status == 0 && secs < 120.0,
          (status == 0 ? std::string("all suites green") : "suite failures, see " + log) + ", " +
              fmt("%.1f s", secs)};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int n, const char* title, const std::function<Outcome()>& check) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s: %s [%.1f s]\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  };
  report(1, "exact small-instance oracle", exact_oracle);
  report(2, "unit-weight collapse", unit_collapse);
  report(3, "FPA sampler exactness", sampler_exactness);
  report(4, "degree tail exponent", degree_tail);
  report(5, "explosive flatness", explosive_flatness);
  ConservativeRun conservative;
  report(6, "conservative growth", [&] {
    conservative = conservative_run();
    return conservative_growth(conservative);
  });
  report(7, "hopcount scaling", [&] { return hopcount_scaling(conservative); });
  report(8, "beta_k centering", beta_centering);
  report(9, "classifier truth table", classifier_table);
  report(10, "greedy path validity", greedy_paths);
  report(11, "invariant suites", invariant_suites);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
