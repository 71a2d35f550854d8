#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fppa/config.hpp"
#include "fppa/pa_graph.hpp"

namespace fppa {

struct ResultRecord {
  ExperimentKind kind = ExperimentKind::DistanceScaling;
  Vertex t = 0;
  std::uint32_t replica = 0;
  std::uint32_t pair = 0;
  Vertex u = 0;  // 0 when the experiment has no pair
  Vertex v = 0;
  std::optional<std::uint32_t> d_G;
  std::optional<double> d_L;
  std::optional<std::uint32_t> d_H;
  bool disconnected = false;
  std::uint64_t master_seed = 0;
  std::uint64_t replica_seed = 0;
  std::string config_digest;
  nlohmann::json extras = nlohmann::json::object();
};

nlohmann::json to_json(const ResultRecord& record);

// Seed for the graph and weights of one (t, replica) cell.
std::uint64_t replica_seed(std::uint64_t master, Vertex t, std::uint32_t replica);

// Explicit request, else FPPA_WORKERS, else the hardware concurrency.
unsigned resolve_workers(unsigned requested = 0);

std::size_t estimate_experiment_bytes(const ExperimentConfig& config, unsigned workers);

// Default limit: three quarters of MemAvailable, or 4 GiB if unknown.
std::size_t default_memory_limit();

// Throws ResourceError carrying the estimate when the largest size does not fit.
void check_resources(const ExperimentConfig& config, unsigned workers);

struct RunOptions {
  unsigned workers = 0;
};

// Records arrive at the sink ordered by (t, replica, pair).
void run_experiment(const ExperimentConfig& config, const std::function<void(const ResultRecord&)>& sink,
                    const RunOptions& options = {});
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct OutputPaths {
  std::string jsonl;
  std::string csv;
  std::string meta;
};

OutputPaths output_paths(const std::string& prefix);

// Writes <prefix>.jsonl, <prefix>.csv and <prefix>.meta.json.
OutputPaths write_outputs(const ExperimentConfig& config, const std::vector<ResultRecord>& records,
                          const std::string& prefix);

}  // namespace fppa
