#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fppa/asymptotics.hpp"
#include "fppa/config.hpp"
#include "fppa/errors.hpp"
#include "fppa/experiment.hpp"
#include "fppa/graph_io.hpp"
#include "fppa/metrics.hpp"
#include "fppa/pa_graph.hpp"
#include "fppa/pathfinder.hpp"
#include "fppa/report.hpp"
#include "fppa/summary.hpp"
#include "fppa/weights.hpp"

using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kResource = 3 };

struct ModelFlags {
  std::string variant;
  int m = 1;
  double delta = 0.0;
  double gamma = 0.75;
  double beta0 = 1.0;
  std::vector<double> rule;

  void attach(CLI::App* app, bool required) {
    auto* opt = app->add_option("--model", variant, "fpa, vpa or gvpa")
                    ->check(CLI::IsMember({"fpa", "vpa", "gvpa"}));
    if (required) opt->required();
    app->add_option("--m", m, "fpa: edges per arriving vertex");
    app->add_option("--delta", delta, "fpa: affine shift, > -m");
    app->add_option("--gamma", gamma, "vpa: slope in (1/2, 1)");
    app->add_option("--beta0", beta0, "vpa: f(0) in (0, 1]");
    app->add_option("--rule", rule, "gvpa: f(0),f(1),... concave, nondecreasing")->delimiter(',');
  }

  fppa::ModelParams params() const {
    fppa::ModelParams p;
    if (variant == "fpa") {
      p = fppa::FpaParams{m, delta};
    } else if (variant == "vpa") {
      p = fppa::VpaParams{gamma, beta0};
    } else {
      p = fppa::GvpaParams{fppa::AttachmentRule::tabulated(rule)};
    }
    fppa::validate(p);
    return p;
  }
};

fppa::WeightDistribution parse_dist(const std::string& text) {
  try {
    return fppa::distribution_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw fppa::ConfigError(std::string("distribution is not valid JSON: ") + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::pair<fppa::Vertex, fppa::Vertex> parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw fppa::ConfigError("pair '" + text + "' is not of the form u:v");
  try {
    return {static_cast<fppa::Vertex>(std::stoul(text.substr(0, colon))),
            static_cast<fppa::Vertex>(std::stoul(text.substr(colon + 1)))};
  } catch (const std::logic_error&) {
    throw fppa::ConfigError("pair '" + text + "' is not of the form u:v");
  }
}

int report_error(bool as_json, const std::string& type, const std::string& message, int code,
                 std::optional<std::size_t> estimate = std::nullopt) {
  if (as_json) {
    json j = {{"error", {{"type", type}, {"message", message}, {"exit_code", code}}}};
    if (estimate) j["error"]["estimated_bytes"] = *estimate;
    std::cout << j.dump() << '\n';
  } else {
    std::cerr << "fppa: " << message << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First passage percolation on preferential attachment graphs"};
  app.require_subcommand(1);
  bool error_json = false;
  app.add_flag("--error-json", error_json, "Print errors as a JSON object on stdout");

  // generate
  auto* gen = app.add_subcommand("generate", "Grow a graph and write its edge list");
  ModelFlags gen_model;
  gen_model.attach(gen, true);
  fppa::Vertex gen_t = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_dist, gen_out;
  std::uint64_t gen_weight_seed = 0;
  gen->add_option("--t", gen_t, "Number of vertices")->required();
  gen->add_option("--seed", gen_seed, "Graph seed");
  gen->add_option("--weights", gen_dist, "Weight distribution JSON");
  gen->add_option("--weight-seed", gen_weight_seed, "Weight seed");
  gen->add_option("-o,--out", gen_out, "Output path (stdout if omitted)");

  // weights
  auto* wts = app.add_subcommand("weights", "Attach i.i.d. edge weights to a stored graph");
  std::string wts_in, wts_dist, wts_out;
  std::uint64_t wts_seed = 0;
  wts->add_option("--in", wts_in, "Edge list")->required();
  wts->add_option("--dist", wts_dist, "Weight distribution JSON")->required();
  wts->add_option("--seed", wts_seed, "Weight seed");
  wts->add_option("-o,--out", wts_out, "Output path (stdout if omitted)");

  // classify
  auto* cls = app.add_subcommand("classify", "Explosive or conservative class of a weight law");
  std::string cls_dist;
  int cls_kmax = fppa::kDefaultKMax;
  double cls_tol = fppa::kDefaultTolerance;
  cls->add_option("--dist", cls_dist, "Weight distribution JSON")->required();
  cls->add_option("--k-max", cls_kmax, "Terms to sum");
  cls->add_option("--tol", cls_tol, "Tail tolerance");

  // predict
  auto* pred = app.add_subcommand("predict", "Asymptotic predictions for a model and size");
  ModelFlags pred_model;
  pred_model.attach(pred, true);
  double pred_t = 0.0, pred_alpha = 0.5;
  std::string pred_dist, pred_variant = "tight";
  std::optional<double> pred_s0, pred_eps;
  pred->add_option("--t", pred_t, "Graph size")->required();
  pred->add_option("--alpha", pred_alpha, "Horizon fraction in [1/2, 1)");
  pred->add_option("--dist", pred_dist, "Weight distribution JSON");
  pred->add_option("--s0", pred_s0, "Bottom layer degree");
  pred->add_option("--layers", pred_variant, "tight or general")->check(CLI::IsMember({"tight", "general"}));
  pred->add_option("--eps", pred_eps, "Exponent slack for the general layer plan");

  // distances
  auto* dist = app.add_subcommand("distances", "d_G, d_L and d_H between vertex pairs");
  std::string dist_in;
  std::vector<std::string> dist_pairs;
  dist->add_option("--in", dist_in, "Weighted edge list")->required();
  dist->add_option("--pair", dist_pairs, "u:v, repeatable")->required();
  bool dist_path = false;
  dist->add_flag("--path", dist_path, "Include the optimal path");

  // greedy
  auto* greedy = app.add_subcommand("greedy", "Trace the layered greedy path to the inner core");
  ModelFlags greedy_model;
  greedy_model.attach(greedy, true);
  std::string greedy_in;
  std::optional<fppa::Vertex> greedy_start, greedy_from;
  double greedy_alpha = 0.5, greedy_s0 = 50.0;
  greedy->add_option("--in", greedy_in, "Weighted edge list")->required();
  greedy->add_option("--start", greedy_start, "Start vertex in the bottom layer");
  greedy->add_option("--from", greedy_from, "Search the nearest high-degree vertex from here");
  greedy->add_option("--alpha", greedy_alpha, "Horizon fraction in [1/2, 1)");
  greedy->add_option("--s0", greedy_s0, "Bottom layer degree");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a JSON config");
  std::string exp_config, exp_output;
  unsigned exp_workers = 0;
  exp->add_option("--config", exp_config, "Experiment config JSON")->required();
  exp->add_option("--output", exp_output, "Output prefix (overrides the config)");
  exp->add_option("--workers", exp_workers, "Worker threads (FPPA_WORKERS if omitted)");

  // audit
  auto* audit = app.add_subcommand("audit", "Recompute summaries from raw records and compare");
  std::string audit_prefix;
  audit->add_option("--prefix", audit_prefix, "Output prefix of an experiment run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    if (error_json) return report_error(true, "usage", e.what(), kConfig);
    app.exit(e);
    return kConfig;
  }

  try {
    if (*gen) {
      fppa::GrowthGraph g = fppa::generate(gen_model.params(), gen_t, gen_seed);
      if (!gen_dist.empty()) g = fppa::assign_weights(g, parse_dist(gen_dist), gen_weight_seed);
      if (gen_out.empty()) {
        fppa::write_graph(std::cout, g);
      } else {
        fppa::save_graph(g, gen_out);
      }
    } else if (*wts) {
      auto loaded = fppa::load_graph(wts_in);
      for (const auto& w : loaded.warnings) std::cerr << "fppa: warning: " << w << '\n';
      const auto g = fppa::assign_weights(loaded.graph, parse_dist(wts_dist), wts_seed);
      if (wts_out.empty()) {
        fppa::write_graph(std::cout, g);
      } else {
        fppa::save_graph(g, wts_out);
      }
    } else if (*cls) {
      print(fppa::to_json(fppa::explosion_characteristic(parse_dist(cls_dist), cls_kmax, cls_tol)));
    } else if (*pred) {
      fppa::PredictionRequest req;
      req.model = pred_model.params();
      req.t = pred_t;
      req.alpha = pred_alpha;
      if (!pred_dist.empty()) req.dist = parse_dist(pred_dist);
      req.s0 = pred_s0;
      req.variant = pred_variant == "tight" ? fppa::LayerVariant::Tight : fppa::LayerVariant::General;
      req.eps_general = pred_eps;
      print(fppa::to_json(fppa::predict(req)));
    } else if (*dist) {
      auto loaded = fppa::load_graph(dist_in);
      for (const auto& w : loaded.warnings) std::cerr << "fppa: warning: " << w << '\n';
      fppa::DistanceEngine engine(loaded.graph);
      for (const auto& text : dist_pairs) {
        const auto [u, v] = parse_pair(text);
        const auto d_g = engine.graph_distance(u, v);
        const auto path = engine.weighted_distance(u, v);
        json j = {{"u", u},
                  {"v", v},
                  {"d_G", d_g ? json(*d_g) : json(nullptr)},
                  {"d_L", path.connected() ? json(path.weight) : json(nullptr)},
                  {"d_H", path.connected() ? json(*path.hops) : json(nullptr)},
                  {"disconnected", !path.connected()}};
        if (dist_path) j["path"] = fppa::to_json(path);
        std::cout << j.dump() << '\n';
      }
    } else if (*greedy) {
      const auto params = greedy_model.params();
      auto loaded = fppa::load_graph(greedy_in, fppa::variant_tag(params));
      for (const auto& w : loaded.warnings) std::cerr << "fppa: warning: " << w << '\n';
      const fppa::GrowthGraph& g = loaded.graph;
      const double tau = fppa::power_law_exponent(params);
      const auto plan = fppa::layer_plan(greedy_s0, g.size(), greedy_alpha, tau, fppa::LayerVariant::Tight);
      const auto index = fppa::layers(g, plan, greedy_alpha);
      fppa::Vertex start = 0;
      if (greedy_start) {
        start = *greedy_start;
      } else if (greedy_from) {
        const auto found = fppa::nearest_high_degree(g, *greedy_from, greedy_alpha, plan.s.front());
        if (!found) throw fppa::StateError("no vertex of degree >= s0 is reachable");
        start = *found;
      } else {
        throw fppa::ConfigError("greedy needs --start or --from");
      }
      const auto trace = fppa::greedy_path(g, start, plan, index);
      for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        json j = fppa::to_json(trace.steps[k]);
        j["step"] = k + 1;
        std::cout << j.dump() << '\n';
      }
      const bool reached = trace.outcome == fppa::GreedyOutcome::ReachedInnerCore;
      json summary = {{"start", trace.start},
                      {"endpoint", trace.endpoint()},
                      {"outcome", reached ? "reached_inner_core" : "failed"},
                      {"k_t", plan.k_t},
                      {"total_weight", trace.total_weight},
                      {"audit", fppa::to_json(fppa::audit_trace(g, trace, plan, index))}};
      if (!reached) summary["failed_at"] = trace.failed_at;
      std::cout << summary.dump() << '\n';
    } else if (*exp) {
      fppa::ExperimentConfig config = fppa::load_config(exp_config);
      if (!exp_output.empty()) config.output = exp_output;
      if (config.output.empty()) throw fppa::ConfigError("no output prefix in the config or on the command line");
      const auto records = fppa::run_experiment(config, fppa::RunOptions{exp_workers});
      const auto paths = fppa::write_outputs(config, records, config.output);
      std::cout << json{{"records", records.size()}, {"jsonl", paths.jsonl}, {"csv", paths.csv},
                        {"meta", paths.meta}}.dump()
                << '\n';
    } else if (*audit) {
      const auto paths = fppa::output_paths(audit_prefix);
      std::ifstream jsonl(paths.jsonl), csv(paths.csv);
      if (!jsonl || !csv) throw fppa::ConfigError("cannot open outputs with prefix '" + audit_prefix + "'");
      const auto report = fppa::audit_summary(jsonl, csv);
      std::cout << json{{"records", report.records}, {"rows_checked", report.rows_checked},
                        {"mismatches", report.mismatches}, {"ok", report.ok()}}.dump()
                << '\n';
      if (!report.ok()) return kFailure;
    }
  } catch (const fppa::ResourceError& e) {
    return report_error(error_json, "resource", e.what(), kResource, e.estimated_bytes());
  } catch (const fppa::ConfigError& e) {
    return report_error(error_json, "config", e.what(), kConfig);
  } catch (const fppa::DomainError& e) {
    return report_error(error_json, "domain", e.what(), kConfig);
  } catch (const fppa::ParseError& e) {
    return report_error(error_json, "parse", e.what(), kConfig);
  } catch (const std::exception& e) {
    return report_error(error_json, "failure", e.what(), kFailure);
  }
  return kOk;
}
