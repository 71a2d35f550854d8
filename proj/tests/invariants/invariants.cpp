// Property suites. Built as their own binary so they can run without the
// rest of the tests; the acceptance binary times one full run of it.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fppa/config.hpp"
#include "fppa/experiment.hpp"
#include "fppa/metrics.hpp"
#include "fppa/pa_graph.hpp"
#include "fppa/report.hpp"
#include "fppa/rng.hpp"
#include "fppa/weights.hpp"

using namespace fppa;

namespace {

std::vector<WeightDistribution> families() {
  const auto e = WeightDistribution::exponential(1.0);
  return {
      WeightDistribution::constant(2.0),
      WeightDistribution::constant(0.0),
      WeightDistribution::uniform(0.0, 1.0),
      WeightDistribution::uniform(0.5, 2.0),
      e,
      WeightDistribution::exponential(3.5),
      WeightDistribution::weibull(2.0, 1.0),
      WeightDistribution::weibull(0.5, 2.0),
      WeightDistribution::shifted(e, 1.0),
      WeightDistribution::shifted(WeightDistribution::weibull(2.0, 1.0), 0.25),
      WeightDistribution::quantile_table({{0.1, 0.5}, {0.4, 0.5}, {0.7, 2.0}, {1.0, 3.0}}),
  };
}

std::vector<double> probe_levels() {
  std::vector<double> ys{1.0, 0.5, 0.1, 0.4, 0.7, 0.9999};
  for (int k = 1; k <= 140; k += 7) ys.push_back(std::pow(10.0, -k));
  Rng rng(4);
  for (int i = 0; i < 200; ++i) ys.push_back(rng.uniform());
  return ys;
}

GrowthGraph weighted_graph(const ModelParams& model, Vertex t, std::uint64_t seed) {
  return assign_weights(generate(model, t, seed), WeightDistribution::exponential(1.0), seed + 1000);
}

}  // namespace

TEST(Galois, QuantileIsLeftmostCdfPoint) {
  for (const auto& d : families()) {
    for (double y : probe_levels()) {
      const double x = d.quantile(y);
      // cdf(quantile(y)) >= y
      EXPECT_GE(d.cdf(x), y) << d.describe() << " y=" << y;
      // nothing to the left reaches y
      if (x > 0.0 && std::isfinite(x)) EXPECT_LT(d.cdf(std::nextafter(x, -INFINITY)), y) << d.describe() << " y=" << y;
    }
  }
}

TEST(Galois, TableStepInverseMatchesScan) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    std::vector<double> ps, xs;
    for (int i = 0; i < n; ++i) {
      ps.push_back(rng.uniform());
      xs.push_back(std::floor(rng.uniform() * 8.0) / 2.0);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    ps.back() = 1.0;
    xs.resize(ps.size());
    std::sort(xs.begin(), xs.end());
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < ps.size(); ++i) pts.emplace_back(ps[i], xs[i]);
    const auto d = WeightDistribution::quantile_table(pts);
    for (double y : probe_levels()) {
      double scan = NAN;
      for (const auto& [p, x] : pts) {
        if (p >= y) {
          scan = x;
          break;
        }
      }
      EXPECT_EQ(d.quantile(y), scan);
      EXPECT_GE(d.cdf(d.quantile(y)), y);
    }
  }
}

TEST(MinOfIid, TailBounds) {
  const int n = 10000;
  const double xi = 0.5;
  const int trials = 1000;
  const auto d = WeightDistribution::exponential(1.0);
  const double upper = d.quantile(std::pow(n, -1.0 + xi));
  const double lower = d.quantile(std::pow(n, -1.0 - xi));
  Rng rng(2024);
  int above = 0, below = 0;
  for (int i = 0; i < trials; ++i) {
    double m = INFINITY;
    for (int j = 0; j < n; ++j) m = std::min(m, d.sample(rng));
    if (m >= upper) ++above;
    if (m <= lower) ++below;
  }
  EXPECT_EQ(above, 0);
  const double p = std::pow(n, -xi);
  EXPECT_LE(below / static_cast<double>(trials), p + 3.0 * std::sqrt(p / trials));
}

TEST(Classifier, ShiftEquivarianceAndPurity) {
  for (const auto& d : families()) {
    for (double s : {1e-9, 0.5, 3.0}) {
      EXPECT_EQ(explosion_characteristic(WeightDistribution::shifted(d, s)).universality,
                UniversalityClass::Conservative)
          << d.describe() << " + " << s;
    }
    EXPECT_EQ(to_json(explosion_characteristic(d)).dump(), to_json(explosion_characteristic(d)).dump());
  }
}

TEST(Sprinkling, SnapshotsNeverShorten) {
  const std::vector<ModelParams> models = {FpaParams{2, -1.0}, FpaParams{1, -0.5}, VpaParams{0.6, 1.0}};
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (const auto& model : models) {
      const auto g = weighted_graph(model, 3000, seed);
      DistanceEngine full(g);
      for (Vertex s : {Vertex{200}, Vertex{1000}, Vertex{2500}}) {
        const auto snap = snapshot(g, s);
        DistanceEngine part(snap);
        const auto from_full = full.weighted_distances_from(1 + static_cast<Vertex>(seed % 50));
        const auto from_snap = part.weighted_distances_from(1 + static_cast<Vertex>(seed % 50));
        for (Vertex v = 1; v <= s; ++v) EXPECT_GE(from_snap[v], from_full[v]);
      }
    }
  }
}

TEST(Monotonicity, BetaAndSigma) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = weighted_graph(FpaParams{2, -1.0}, 20000, seed);
    DistanceEngine engine(g);
    Rng rng(seed);
    for (int r = 0; r < 10; ++r) {
      const Vertex q = 1 + static_cast<Vertex>(rng.below(g.size()));
      const auto beta = engine.beta_profile(q, 8);
      for (std::size_t k = 1; k < beta.size(); ++k) EXPECT_LE(beta[k - 1], beta[k]);
      double prev = 0.0;
      for (std::uint64_t n : {1, 2, 5, 10, 50, 200, 1000}) {
        const double sigma = engine.sigma_n(q, n);
        EXPECT_LE(prev, sigma);
        prev = sigma;
        EXPECT_GE(engine.ball(q, Metric::Weighted, sigma).members.size(), n);
      }
    }
  }
}

TEST(Metric, TriangleAndHopBound) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = weighted_graph(FpaParams{1, 0.0}, 5000, seed);
    DistanceEngine engine(g);
    Rng rng(seed + 7);
    for (int i = 0; i < 20; ++i) {
      const Vertex a = 1 + static_cast<Vertex>(rng.below(g.size()));
      const auto da = engine.weighted_distances_from(a);
      const Vertex b = 1 + static_cast<Vertex>(rng.below(g.size()));
      const auto db = engine.weighted_distances_from(b);
      for (Vertex c = 1; c <= g.size(); c += 37) {
        EXPECT_LE(da[c], da[b] + db[c] + 1e-9 * (1.0 + da[c]));
      }
      const auto pd = engine.pair_distances(a, b);
      if (pd.d_G) {
        EXPECT_LE(*pd.d_G, *pd.d_H);
      }
    }
  }
}

TEST(Determinism, GraphsAndOutputsByteEqual) {
  for (const ModelParams& model : {ModelParams{FpaParams{2, -1.0}}, ModelParams{VpaParams{0.7, 0.5}}}) {
    EXPECT_EQ(weighted_graph(model, 5000, 3), weighted_graph(model, 5000, 3));
  }
  const auto c = config_from_json({{"kind", "distance_scaling"},
                                   {"model", {{"variant", "fpa"}, {"m", 2}, {"delta", -1.0}}},
                                   {"sizes", {2000, 4000}},
                                   {"weights", {{"family", "exponential"}, {"rate", 1.0}}},
                                   {"pairs", 16},
                                   {"replicas", 2},
                                   {"seed", 5}});
  const auto dir = std::filesystem::temp_directory_path() / "fppa_invariants";
  std::filesystem::create_directories(dir);
  const auto read = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto a = write_outputs(c, run_experiment(c, RunOptions{1}), (dir / "a").string());
  const auto b = write_outputs(c, run_experiment(c, RunOptions{4}), (dir / "b").string());
  EXPECT_EQ(read(a.jsonl), read(b.jsonl));
  EXPECT_EQ(read(a.csv), read(b.csv));
  EXPECT_EQ(read(a.meta), read(b.meta));
  std::filesystem::remove_all(dir);
}
