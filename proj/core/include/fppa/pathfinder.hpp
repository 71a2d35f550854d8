#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fppa/asymptotics.hpp"
#include "fppa/pa_graph.hpp"

namespace fppa {

// Vertices are "old" when their label is at most floor(alpha t); everything
// younger can act as an alpha-connector.
Vertex old_horizon(const GrowthGraph& g, double alpha);

struct InnerCore {
  Vertex horizon = 0;             // floor(alpha t)
  double threshold = 0.0;
  bool degenerate = false;        // threshold <= 1: every vertex qualifies
  std::vector<Vertex> members;    // by degree at the horizon, descending; ties by label
  std::vector<std::uint32_t> degrees;  // degree_at(member, horizon), aligned with members
};

InnerCore inner_core(const GrowthGraph& g, double alpha, double tau);

// Nested degree layers L_k = {x <= horizon : degree_at(x, horizon) >= s_k}.
struct LayerIndex {
  Vertex horizon = 0;
  std::vector<std::vector<Vertex>> layers;  // ascending labels
  std::vector<int> top_layer;               // per vertex: largest k with x in L_k, or -1

  bool contains(std::size_t k, Vertex x) const {
    return x < top_layer.size() && top_layer[x] >= static_cast<int>(k);
  }
};

LayerIndex layers(const GrowthGraph& g, const LayerPlan& plan, double alpha);

struct Cherry {
  Vertex connector;  // y, born after the horizon
  Vertex target;     // z in the layer
  EdgeId first;      // x -- y
  EdgeId second;     // y -- z
  double weight;     // L(first) + L(second)
};

// All (y, z) with y > horizon, z in layer k, z != x and x <-> y <-> z. Among
// parallel edges the lightest is used. Sorted by (y, z). Weights are 0 when
// the graph is unweighted.
std::vector<Cherry> alpha_connectors(const GrowthGraph& g, Vertex x, const LayerIndex& index,
                                     std::size_t layer_k);

enum class GreedyOutcome { ReachedInnerCore, Failed };

struct GreedyStep {
  Vertex connector;
  Vertex vertex;
  EdgeId first;
  EdgeId second;
  double weight;
};

struct GreedyPathTrace {
  Vertex start = 0;
  std::vector<GreedyStep> steps;
  GreedyOutcome outcome = GreedyOutcome::ReachedInnerCore;
  int failed_at = 0;  // step k when outcome == Failed
  double total_weight = 0.0;

  Vertex endpoint() const { return steps.empty() ? start : steps.back().vertex; }
};

// Picks, for k = 1..K_t, the lightest cherry from pi_{k-1} into L_k (ties by
// (y, z)). Connectors may repeat across steps.
GreedyPathTrace greedy_path(const GrowthGraph& g, Vertex start, const LayerPlan& plan,
                            const LayerIndex& index);

// Nearest vertex (BFS order, ties by label) among old vertices with
// degree_at(., horizon) >= s0.
std::optional<Vertex> nearest_high_degree(const GrowthGraph& g, Vertex from, double alpha,
                                          double s0);

struct TraceAudit {
  bool edges_exist = true;
  bool weights_match = true;
  bool age_discipline = true;
  bool layer_membership = true;
  bool total_matches = true;
  bool ok() const {
    return edges_exist && weights_match && age_discipline && layer_membership && total_matches;
  }
};

// Re-checks a trace against the graph independently of how it was built.
TraceAudit audit_trace(const GrowthGraph& g, const GreedyPathTrace& trace, const LayerPlan& plan,
                       const LayerIndex& index);

}  // namespace fppa
