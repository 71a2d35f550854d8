#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fppa/pa_graph.hpp"
#include "fppa/weights.hpp"

namespace fppa {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind {
  DistanceScaling,
  Hopcount,
  ExplosionVsConservative,
  BetaKCentering,
  DegreeTail,
  GreedyValidation,
  InnerCoreDiameter,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

// Distribution descriptors:
//   {"family": "constant", "value": c}
//   {"family": "uniform", "low": a, "high": b}
//   {"family": "exponential", "rate": r}
//   {"family": "weibull", "shape": k, "scale": s}
//   {"family": "shifted", "shift": s, "base": {...}}
//   {"family": "quantile_table", "points": [[p, x], ...]}
WeightDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WeightDistribution& dist);

// Model descriptors:
//   {"variant": "fpa", "m": 2, "delta": -1}
//   {"variant": "vpa", "gamma": 0.6, "beta0": 0.5}
//   {"variant": "gvpa", "rule": [f(0), f(1), ...]}
ModelParams model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ModelParams& model);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DistanceScaling;
  ModelParams model = FpaParams{};
  std::vector<Vertex> sizes;
  double alpha = 0.5;
  WeightDistribution weights = WeightDistribution::constant(1.0);
  std::optional<WeightDistribution> compare_weights;
  std::uint32_t pairs = 1;
  std::uint32_t replicas = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::uint32_t k_max = 6;           // beta_k_centering
  double s0 = 50.0;                  // greedy_validation
  double top_fraction = 0.05;        // degree_tail
  double c_tau = 0.0;                // greedy_validation window offset
  std::optional<std::size_t> memory_limit_bytes;
};

// Throws ConfigError on unknown kinds, missing fields or invalid values.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// FNV-1a of the canonical JSON form, hex encoded.
std::string config_digest(const ExperimentConfig& config);

}  // namespace fppa
