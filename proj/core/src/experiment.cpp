#include "fppa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "fppa/asymptotics.hpp"
#include "fppa/errors.hpp"
#include "fppa/metrics.hpp"
#include "fppa/pathfinder.hpp"
#include "fppa/rng.hpp"
#include "fppa/summary.hpp"
#include "fppa/tail_fit.hpp"

namespace fppa {

using nlohmann::json;

namespace {

enum : std::uint64_t { kGraphStream = 1, kWeightStream = 2, kPairStream = 3 };

bool ultrasmall(double tau) { return tau > 2.0 && tau < 3.0; }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json finite_array(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(finite_or_null(x));
  return a;
}

// Quantities shared by every record of one size.
struct SizePredictions {
  double tau = 0.0;
  std::optional<int> k_star;
  std::optional<double> q_t;
  std::optional<double> q_t_compare;
  std::vector<double> main_terms;  // k = 0..k_max, beta_k_centering only
  std::optional<LayerPlan> plan;   // greedy_validation only
};

SizePredictions predictions_for(const ExperimentConfig& c, Vertex t) {
  SizePredictions p;
  p.tau = power_law_exponent(c.model);
  if (c.kind == ExperimentKind::GreedyValidation) {
    require_ultrasmall_regime(p.tau);
    p.plan = layer_plan(c.s0, t, c.alpha, p.tau, LayerVariant::Tight);
  }
  if (!ultrasmall(p.tau)) return p;
  p.k_star = k_star(t, p.tau);
  p.q_t = q_t(t, p.tau, c.weights);
  if (c.compare_weights) p.q_t_compare = q_t(t, p.tau, *c.compare_weights);
  if (c.kind == ExperimentKind::BetaKCentering) {
    for (std::uint32_t k = 0; k <= c.k_max; ++k) {
      p.main_terms.push_back(main_term_sum(static_cast<int>(k), p.tau, c.weights));
    }
  }
  return p;
}

struct Cell {
  const ExperimentConfig& config;
  const std::string& digest;
  const SizePredictions& pred;
  Vertex t;
  std::uint32_t replica;
  std::uint64_t seed;
  GrowthGraph graph;
  std::optional<GrowthGraph> compare;
  std::optional<LayerIndex> layer_index;
  std::optional<InnerCore> core;
};

struct Engines {
  DistanceEngine primary;
  std::optional<DistanceEngine> compare;
};

ResultRecord blank_record(const Cell& cell, std::uint32_t pair) {
  ResultRecord r;
  r.kind = cell.config.kind;
  r.t = cell.t;
  r.replica = cell.replica;
  r.pair = pair;
  r.master_seed = cell.config.seed;
  r.replica_seed = cell.seed;
  r.config_digest = cell.digest;
  return r;
}

void fill_distances(ResultRecord& r, DistanceEngine& engine, Vertex u, Vertex v) {
  r.u = u;
  r.v = v;
  const PairDistances d = engine.pair_distances(u, v);
  r.d_G = d.d_G;
  r.disconnected = !d.d_G.has_value();
  if (!r.disconnected) {
    r.d_L = d.d_L;
    r.d_H = d.d_H;
  }
}

void add_ratios(ResultRecord& r, const SizePredictions& pred) {
  if (!pred.k_star) return;
  r.extras["K_star"] = *pred.k_star;
  r.extras["Q_t"] = *pred.q_t;
  if (r.disconnected) return;
  if (*pred.q_t > 0.0) r.extras["dL_over_2Qt"] = *r.d_L / (2.0 * *pred.q_t);
  if (*pred.k_star > 0) r.extras["dH_over_2Kstar"] = *r.d_H / (2.0 * *pred.k_star);
}

ResultRecord measure_pair(const Cell& cell, Engines& engines, std::uint32_t pair) {
  const ExperimentConfig& c = cell.config;
  ResultRecord r = blank_record(cell, pair);
  Rng rng(derive_seed({cell.seed, kPairStream, pair}));
  switch (c.kind) {
    case ExperimentKind::DistanceScaling:
    case ExperimentKind::Hopcount: {
      const auto [u, v] = sample_typical_pair(cell.t, rng);
      fill_distances(r, engines.primary, u, v);
      add_ratios(r, cell.pred);
      break;
    }
    case ExperimentKind::ExplosionVsConservative: {
      const auto [u, v] = sample_typical_pair(cell.t, rng);
      fill_distances(r, engines.primary, u, v);
      add_ratios(r, cell.pred);
      if (!r.disconnected) {
        const PairDistances alt = engines.compare->pair_distances(u, v);
        r.extras["d_L_compare"] = alt.d_L;
        r.extras["d_H_compare"] = *alt.d_H;
      }
      if (cell.pred.q_t_compare) r.extras["Q_t_compare"] = *cell.pred.q_t_compare;
      break;
    }
    case ExperimentKind::BetaKCentering: {
      const auto q = static_cast<Vertex>(1 + rng.below(cell.t));
      r.u = q;
      const auto beta = engines.primary.beta_profile(q, c.k_max);
      r.extras["beta"] = finite_array(beta);
      if (!cell.pred.main_terms.empty()) {
        std::vector<double> centered(beta.size());
        for (std::size_t k = 0; k < beta.size(); ++k) centered[k] = beta[k] - cell.pred.main_terms[k];
        r.extras["main_term"] = cell.pred.main_terms;
        r.extras["centered"] = finite_array(centered);
      }
      r.disconnected = !std::isfinite(beta.back());
      break;
    }
    case ExperimentKind::GreedyValidation: {
      const LayerPlan& plan = *cell.pred.plan;
      const LayerIndex& index = *cell.layer_index;
      const auto q = static_cast<Vertex>(1 + rng.below(index.horizon));
      r.u = q;
      r.extras["K_t"] = plan.k_t;
      // s0 itself, not the capped s_0 of the plan; it implies membership of L_0
      const auto start = nearest_high_degree(cell.graph, q, c.alpha, std::max(c.s0, plan.s.front()));
      if (!start) {
        r.disconnected = true;
        r.extras["outcome"] = "no_start";
        r.extras["success"] = false;
        break;
      }
      r.d_G = engines.primary.graph_distance_bidirectional(q, *start);
      const GreedyPathTrace trace = greedy_path(cell.graph, *start, plan, index);
      const TraceAudit audit = audit_trace(cell.graph, trace, plan, index);
      const bool success = trace.outcome == GreedyOutcome::ReachedInnerCore;
      r.v = trace.endpoint();
      r.extras["start"] = *start;
      r.extras["outcome"] = success ? "reached_inner_core" : "failed";
      r.extras["success"] = success;
      if (!success) r.extras["failed_at"] = trace.failed_at;
      r.extras["steps"] = trace.steps.size();
      r.extras["total_weight"] = trace.total_weight;
      r.extras["audit_ok"] = audit.ok();
      const PairDistances best = engines.primary.pair_distances(*start, trace.endpoint());
      r.d_L = best.d_L;
      r.d_H = best.d_H;
      // the two sums add the same edges in different orders
      r.extras["within_total"] = best.d_L <= trace.total_weight * (1.0 + 1e-12);
      if (plan.s.front() > std::exp(1.0)) {
        r.extras["h_tau_s0"] = h_tau(plan.s.front(), cell.pred.tau, c.c_tau);
      }
      break;
    }
    case ExperimentKind::InnerCoreDiameter: {
      const InnerCore& core = *cell.core;
      r.extras["core_size"] = core.members.size();
      r.extras["threshold"] = core.threshold;
      if (core.members.size() < 2) {
        r.disconnected = true;
        break;
      }
      const auto n = core.members.size();
      const auto i = rng.below(n);
      auto j = rng.below(n - 1);
      if (j >= i) ++j;
      fill_distances(r, engines.primary, core.members[i], core.members[j]);
      break;
    }
    case ExperimentKind::DegreeTail:
      break;
  }
  return r;
}

ResultRecord degree_tail_record(const Cell& cell) {
  ResultRecord r = blank_record(cell, 0);
  const auto degrees = degrees_at(cell.graph, cell.t);
  const std::span<const std::uint32_t> observed(degrees.data() + 1, degrees.size() - 1);
  const TailFit fit =
      fit_tail_exponent(observed, cell.config.top_fraction, derive_seed({cell.seed, kPairStream}));
  r.extras["tau_hat"] = fit.tau_hat;
  r.extras["std_error"] = fit.std_error;
  r.extras["n_top"] = fit.n_top;
  r.extras["cutoff"] = fit.cutoff;
  r.extras["tau_model"] = cell.pred.tau;
  return r;
}

std::vector<ResultRecord> run_cell(Cell& cell, unsigned workers) {
  const ExperimentConfig& c = cell.config;
  if (c.kind == ExperimentKind::DegreeTail) return {degree_tail_record(cell)};

  std::vector<ResultRecord> records(c.pairs);
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      Engines engines{DistanceEngine(cell.graph), std::nullopt};
      if (cell.compare) engines.compare.emplace(*cell.compare);
      for (std::uint32_t p = next++; p < c.pairs; p = next++) records[p] = measure_pair(cell, engines, p);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = c.pairs;
    }
  };
  const unsigned n = std::min<unsigned>(workers, c.pairs);
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace

json to_json(const ResultRecord& r) {
  json j = {
      {"schema_version", kSchemaVersion},
      {"kind", to_string(r.kind)},
      {"t", r.t},
      {"replica", r.replica},
      {"pair", r.pair},
      {"u", r.u},
      {"v", r.v},
      {"d_G", r.d_G ? json(*r.d_G) : json(nullptr)},
      {"d_L", r.d_L ? finite_or_null(*r.d_L) : json(nullptr)},
      {"d_H", r.d_H ? json(*r.d_H) : json(nullptr)},
      {"disconnected", r.disconnected},
      {"master_seed", r.master_seed},
      {"replica_seed", r.replica_seed},
      {"config_digest", r.config_digest},
      {"extras", r.extras},
  };
  return j;
}

std::uint64_t replica_seed(std::uint64_t master, Vertex t, std::uint32_t replica) {
  return derive_seed({master, t, replica});
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FPPA_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t estimate_experiment_bytes(const ExperimentConfig& config, unsigned workers) {
  const Vertex t = *std::max_element(config.sizes.begin(), config.sizes.end());
  const std::size_t graph = estimate_graph_bytes(config.model, t);
  const std::size_t copies = config.compare_weights ? 3 : 2;  // topology plus weighted copies
  // distance scratch: stamps, distances, hops, predecessors, heap
  const std::size_t scratch = static_cast<std::size_t>(t) * 40;
  const std::size_t engines = config.compare_weights ? 2 : 1;
  return copies * graph + std::max(1u, workers) * engines * scratch;
}

std::size_t default_memory_limit() {
  std::ifstream meminfo("/proc/meminfo");
  std::string key;
  std::size_t kb = 0;
  std::string unit;
  while (meminfo >> key >> kb >> unit) {
    if (key == "MemAvailable:") return kb * 1024 / 4 * 3;
  }
  return std::size_t{4} << 30;
}

void check_resources(const ExperimentConfig& config, unsigned workers) {
  const std::size_t need = estimate_experiment_bytes(config, workers);
  const std::size_t limit = config.memory_limit_bytes.value_or(default_memory_limit());
  if (need > limit) {
    throw ResourceError("experiment needs about " + std::to_string(need >> 20) + " MiB but the limit is " +
                            std::to_string(limit >> 20) + " MiB",
                        need);
  }
}

void run_experiment(const ExperimentConfig& config, const std::function<void(const ResultRecord&)>& sink,
                    const RunOptions& options) {
  const unsigned workers = resolve_workers(options.workers);
  check_resources(config, workers);
  const std::string digest = config_digest(config);
  for (Vertex t : config.sizes) {
    const SizePredictions pred = predictions_for(config, t);
    for (std::uint32_t replica = 0; replica < config.replicas; ++replica) {
      const std::uint64_t seed = replica_seed(config.seed, t, replica);
      const std::uint64_t weight_seed = derive_seed({seed, kWeightStream});
      GrowthGraph topology = generate(config.model, t, derive_seed({seed, kGraphStream}));
      Cell cell{config, digest, pred, t, replica, seed, assign_weights(topology, config.weights, weight_seed),
                std::nullopt, std::nullopt, std::nullopt};
      if (config.compare_weights) {
        // same uniforms under both laws: the two weightings are coupled edge by edge
        cell.compare = assign_weights(topology, *config.compare_weights, weight_seed);
      }
      if (pred.plan) cell.layer_index = layers(cell.graph, *pred.plan, config.alpha);
      if (config.kind == ExperimentKind::InnerCoreDiameter) {
        cell.core = inner_core(cell.graph, config.alpha, pred.tau);
      }
      for (const ResultRecord& r : run_cell(cell, workers)) sink(r);
    }
  }
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  std::vector<ResultRecord> records;
  run_experiment(config, [&](const ResultRecord& r) { records.push_back(r); }, options);
  return records;
}

OutputPaths output_paths(const std::string& prefix) {
  return {prefix + ".jsonl", prefix + ".csv", prefix + ".meta.json"};
}

OutputPaths write_outputs(const ExperimentConfig& config, const std::vector<ResultRecord>& records,
                          const std::string& prefix) {
  const OutputPaths paths = output_paths(prefix);
  std::vector<json> raw;
  raw.reserve(records.size());
  {
    std::ofstream out(paths.jsonl, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + paths.jsonl + "'");
    for (const ResultRecord& r : records) {
      raw.push_back(to_json(r));
      out << raw.back().dump() << '\n';
    }
  }
  {
    std::ofstream out(paths.csv, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + paths.csv + "'");
    write_summary_csv(out, summarize_records(raw));
  }
  {
    std::size_t disconnected = 0;
    for (const ResultRecord& r : records) disconnected += r.disconnected ? 1 : 0;
    json meta = {
        {"schema_version", kSchemaVersion},
        {"config", to_json(config)},
        {"config_digest", config_digest(config)},
        {"records", records.size()},
        {"disconnected", disconnected},
        {"distance_summaries", "over connected pairs only; disconnected pairs are counted separately"},
        {"tau", power_law_exponent(config.model)},
    };
    std::ofstream out(paths.meta, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + paths.meta + "'");
    out << meta.dump(2) << '\n';
  }
  return paths;
}

}  // namespace fppa
