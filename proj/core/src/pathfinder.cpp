#include "fppa/pathfinder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fppa/errors.hpp"

namespace fppa {

Vertex old_horizon(const GrowthGraph& g, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const auto h = static_cast<Vertex>(std::floor(alpha * g.size()));
  if (h < 3) throw DomainError("floor(alpha t) must be at least 3");
  return h;
}

InnerCore inner_core(const GrowthGraph& g, double alpha, double tau) {
  InnerCore core;
  core.horizon = old_horizon(g, alpha);
  core.threshold = inner_core_threshold(g.size(), alpha, tau);
  core.degenerate = core.threshold <= 1.0;
  const auto deg = degrees_at(g, core.horizon);
  for (Vertex w = 1; w <= core.horizon; ++w) {
    if (deg[w] >= core.threshold) core.members.push_back(w);
  }
  std::stable_sort(core.members.begin(), core.members.end(),
                   [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
  core.degrees.reserve(core.members.size());
  for (Vertex w : core.members) core.degrees.push_back(deg[w]);
  return core;
}

LayerIndex layers(const GrowthGraph& g, const LayerPlan& plan, double alpha) {
  LayerIndex index;
  index.horizon = old_horizon(g, alpha);
  const auto deg = degrees_at(g, index.horizon);
  index.layers.resize(plan.s.size());
  index.top_layer.assign(static_cast<std::size_t>(index.horizon) + 1, -1);
  for (Vertex x = 1; x <= index.horizon; ++x) {
    for (std::size_t k = 0; k < plan.s.size() && deg[x] >= plan.s[k]; ++k) {
      index.layers[k].push_back(x);
      index.top_layer[x] = static_cast<int>(k);
    }
  }
  return index;
}

std::vector<Cherry> alpha_connectors(const GrowthGraph& g, Vertex x, const LayerIndex& index,
                                     std::size_t layer_k) {
  if (x < 1 || x > index.horizon) throw DomainError("alpha_connectors: x must be an old vertex");
  const bool weighted = !g.weights().empty();
  auto w = [&](EdgeId e) { return weighted ? g.weights()[e] : 0.0; };
  std::vector<Cherry> out;
  for (const Arc& xy : g.arcs(x)) {
    const Vertex y = xy.to;
    if (y <= index.horizon) continue;
    for (const Arc& yz : g.arcs(y)) {
      const Vertex z = yz.to;
      if (z == x || !index.contains(layer_k, z)) continue;
      out.push_back(Cherry{y, z, xy.edge, yz.edge, w(xy.edge) + w(yz.edge)});
    }
  }
  // Keep the lightest representative of each (y, z) over parallel edges.
  std::sort(out.begin(), out.end(), [](const Cherry& a, const Cherry& b) {
    if (a.connector != b.connector) return a.connector < b.connector;
    if (a.target != b.target) return a.target < b.target;
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Cherry& a, const Cherry& b) {
                          return a.connector == b.connector && a.target == b.target;
                        }),
            out.end());
  return out;
}

GreedyPathTrace greedy_path(const GrowthGraph& g, Vertex start, const LayerPlan& plan,
                            const LayerIndex& index) {
  if (!g.has_weights()) throw StateError("greedy_path needs edge weights");
  if (!index.contains(0, start)) throw DomainError("greedy_path: start vertex is not in layer 0");
  GreedyPathTrace trace;
  trace.start = start;
  Vertex current = start;
  for (int k = 1; k <= plan.k_t; ++k) {
    const auto cherries = alpha_connectors(g, current, index, static_cast<std::size_t>(k));
    if (cherries.empty()) {
      trace.outcome = GreedyOutcome::Failed;
      trace.failed_at = k;
      return trace;
    }
    // first minimum in (y, z) order
    const auto best = std::min_element(cherries.begin(), cherries.end(),
                                       [](const Cherry& a, const Cherry& b) { return a.weight < b.weight; });
    trace.steps.push_back(GreedyStep{best->connector, best->target, best->first, best->second, best->weight});
    trace.total_weight += best->weight;
    current = best->target;
  }
  trace.outcome = GreedyOutcome::ReachedInnerCore;
  return trace;
}

std::optional<Vertex> nearest_high_degree(const GrowthGraph& g, Vertex from, double alpha,
                                          double s0) {
  const Vertex horizon = old_horizon(g, alpha);
  if (from < 1 || from > g.size()) throw DomainError("vertex out of range");
  const auto deg = degrees_at(g, horizon);
  auto qualifies = [&](Vertex v) { return v <= horizon && deg[v] >= s0; };
  std::vector<Vertex> frontier{from};
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.size()) + 1, 0);
  seen[from] = 1;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    for (Vertex v : frontier) {
      if (qualifies(v)) return v;
    }
    std::vector<Vertex> next;
    for (Vertex v : frontier) {
      for (const Arc& a : g.arcs(v)) {
        if (!seen[a.to]) {
          seen[a.to] = 1;
          next.push_back(a.to);
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

TraceAudit audit_trace(const GrowthGraph& g, const GreedyPathTrace& trace, const LayerPlan& plan,
                       const LayerIndex& index) {
  TraceAudit audit;
  const auto edges = g.edges();
  const auto weights = g.weights();
  auto joins = [&](EdgeId e, Vertex a, Vertex b) {
    if (e >= edges.size()) return false;
    const Edge& ed = edges[e];
    return (ed.src == a && ed.dst == b) || (ed.src == b && ed.dst == a);
  };
  Vertex prev = trace.start;
  double total = 0.0;
  audit.layer_membership = index.contains(0, trace.start);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const GreedyStep& st = trace.steps[i];
    if (!joins(st.first, prev, st.connector) || !joins(st.second, st.connector, st.vertex)) {
      audit.edges_exist = false;
      break;
    }
    if (weights.empty() || weights[st.first] + weights[st.second] != st.weight) {
      audit.weights_match = false;
    }
    if (st.connector <= index.horizon || edges[st.first].born <= index.horizon ||
        edges[st.second].born <= index.horizon) {
      audit.age_discipline = false;
    }
    if (st.vertex > index.horizon ||
        static_cast<double>(degree_at(g, st.vertex, index.horizon)) < plan.s[i + 1]) {
      audit.layer_membership = false;
    }
    total += st.weight;
    prev = st.vertex;
  }
  audit.total_matches = total == trace.total_weight;
  if (trace.outcome == GreedyOutcome::ReachedInnerCore &&
      trace.steps.size() != static_cast<std::size_t>(plan.k_t)) {
    audit.layer_membership = false;
  }
  return audit;
}

}  // namespace fppa
