#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fppa/rng.hpp"
#include "fppa/weights.hpp"

namespace fppa {

// Vertices are labelled 1..t in order of arrival.
using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex born;  // arrival time of the younger endpoint, always == src
  Vertex src;   // arriving vertex
  Vertex dst;   // older endpoint, dst < src
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One end of an edge as seen from a vertex.
struct Arc {
  Vertex to;
  EdgeId edge;
};

struct FpaParams {
  int m = 1;
  double delta = 0.0;
};

struct VpaParams {
  double gamma = 0.75;
  double beta0 = 1.0;
};

// Concave, nondecreasing attachment rule f: N -> (0, inf). Tabulated rules
// hold f(0), ..., f(n-1) and continue affinely with the last increment, so
// the limit slope gamma_f is exact.
class AttachmentRule {
 public:
  static AttachmentRule affine(double gamma, double beta0);
  static AttachmentRule tabulated(std::vector<double> values);

  double operator()(std::uint64_t indegree) const;
  double limit_slope() const { return slope_; }
  const std::vector<double>& values() const { return values_; }

 private:
  AttachmentRule(std::vector<double> values, double slope)
      : values_(std::move(values)), slope_(slope) {}
  std::vector<double> values_;
  double slope_;
};

struct GvpaParams {
  AttachmentRule rule = AttachmentRule::affine(0.75, 1.0);
};

using ModelParams = std::variant<FpaParams, VpaParams, GvpaParams>;

// Throws ConfigError when the parameters violate the model's constraints.
void validate(const ModelParams& params);
AttachmentRule attachment_rule(const VpaParams& params);
// Whitespace-free tag, e.g. "fpa(m=2,delta=-1)".
std::string variant_tag(const ModelParams& params);

struct GraphProvenance {
  std::string variant;
  std::uint64_t seed = 0;
};

// Growing multigraph on vertices 1..t. Edges are kept in order of birth and
// the per-vertex arc lists are in edge-id order, so arcs of a vertex are
// sorted by birth time. Immutable once built.
class GrowthGraph {
 public:
  GrowthGraph() = default;
  // Validates dst < src == born <= t and nondecreasing birth order.
  GrowthGraph(Vertex t, std::vector<Edge> edges, GraphProvenance provenance = {},
              std::vector<double> weights = {});

  Vertex size() const { return t_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  bool has_weights() const { return !weights_.empty() || edges_.empty(); }
  std::span<const double> weights() const { return weights_; }
  // Throws StateError if weights have not been assigned.
  double weight(EdgeId e) const;

  std::span<const Arc> arcs(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const GraphProvenance& provenance() const { return provenance_; }

  // Same topology and provenance with a new weight vector (one per edge).
  GrowthGraph with_weights(std::vector<double> weights) const;

  friend bool operator==(const GrowthGraph& a, const GrowthGraph& b) {
    return a.t_ == b.t_ && a.edges_ == b.edges_ && a.weights_ == b.weights_;
  }

 private:
  void build_index();

  Vertex t_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
  GraphProvenance provenance_;
};

// Z_{t,j} = (t-2)(delta+2m) + j - 1 + m + delta.
double connection_normalizer(Vertex t, int j, int m, double delta);

// O(1) sampler for the FPA connection law. Target v of the next edge of
// vertex s has probability (indegree(v) + m + delta) / Z. The indegree part is
// drawn as the destination of a uniform past edge (mass = number of edges so
// far); the constant part as a uniform vertex of [s-1] (mass (s-1)(m+delta)).
// The two masses add up to Z_{s,j}.
class FpaSampler {
 public:
  FpaSampler(int m, double delta);

  double edge_mass() const { return static_cast<double>(targets_.size()); }
  double vertex_mass(Vertex s) const { return (s - 1) * (m_ + delta_); }
  // Probability vector over 1..s-1 (index 0 unused) implied by the
  // decomposition in its current state.
  std::vector<double> next_target_law(Vertex s) const;
  // Draws the target of the next edge of s and records it.
  Vertex draw(Vertex s, Rng& rng);
  std::span<const Vertex> past_targets() const { return targets_; }

 private:
  int m_;
  double delta_;
  std::vector<Vertex> targets_;
};

GrowthGraph generate_fpa(const FpaParams& params, Vertex t, std::uint64_t seed);
GrowthGraph generate_gvpa(const AttachmentRule& rule, Vertex t, std::uint64_t seed,
                          const std::string& variant = {});
GrowthGraph generate(const ModelParams& params, Vertex t, std::uint64_t seed);

// Total degree of v counting edges born at or before s. Requires 1 <= v <= s <= t.
std::uint32_t degree_at(const GrowthGraph& g, Vertex v, Vertex s);
std::uint32_t indegree_at(const GrowthGraph& g, Vertex v, Vertex s);
// degree_at(v, s) for every v in 1..s; index 0 unused.
std::vector<std::uint32_t> degrees_at(const GrowthGraph& g, Vertex s);

// Independent weight per edge; the draw for edge i depends only on (seed, i).
GrowthGraph assign_weights(const GrowthGraph& g, const WeightDistribution& dist,
                           std::uint64_t seed);
// Counter-based uniform on (0,1) used by assign_weights.
double edge_uniform(std::uint64_t seed, EdgeId edge);

// Restriction to vertices [s] and edges born <= s; weights carried over.
GrowthGraph snapshot(const GrowthGraph& g, Vertex s);

// Rough memory footprint of generating and querying a graph of size t.
std::size_t estimate_graph_bytes(const ModelParams& params, Vertex t);

}  // namespace fppa
