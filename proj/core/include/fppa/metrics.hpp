#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fppa/pa_graph.hpp"
#include "fppa/rng.hpp"

namespace fppa {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Weight-minimal path. Among weight-minimal paths the one with the fewest
// edges is taken (that edge count is the hopcount); remaining ties go to the
// smallest-labelled predecessor, scanning back from the target.
struct PathResult {
  double weight = kInfinity;
  std::optional<std::uint32_t> hops;  // empty iff disconnected
  std::vector<Vertex> vertices;       // u ... v
  std::vector<EdgeId> edges;          // edges[i] joins vertices[i] and vertices[i+1]

  bool connected() const { return hops.has_value(); }
};

// Distances only, no path. d_L is kInfinity when disconnected.
struct PairDistances {
  std::optional<std::uint32_t> d_G;
  double d_L = kInfinity;
  std::optional<std::uint32_t> d_H;
};

enum class Metric { Graph, Weighted };

struct BallMember {
  Vertex vertex;
  double distance;
};

struct BallView {
  Vertex center = 0;
  Metric metric = Metric::Graph;
  double radius = 0.0;
  std::vector<BallMember> members;  // in order of discovery, center first
};

// Shortest-path queries on one graph. Owns its scratch arrays, so one engine
// per thread; the graph is only read and must outlive the engine.
class DistanceEngine {
 public:
  explicit DistanceEngine(const GrowthGraph& g);

  const GrowthGraph& graph() const { return *g_; }

  std::optional<std::uint32_t> graph_distance(Vertex u, Vertex v);
  // Lexicographic (weight, hops) Dijkstra; stops once v is settled.
  PathResult weighted_distance(Vertex u, Vertex v);

  // Searches from both ends; same values as graph_distance and
  // weighted_distance up to rounding in the last place of d_L.
  std::optional<std::uint32_t> graph_distance_bidirectional(Vertex u, Vertex v);
  PairDistances pair_distances(Vertex u, Vertex v);

  BallView ball(Vertex q, Metric metric, double radius);
  // Vertices at graph distance exactly floor(k), ascending labels.
  std::vector<Vertex> boundary(Vertex q, double k);

  // d_L(q, boundary(q, k)); 0 for k = 0 and infinity for an empty boundary.
  double beta_k(Vertex q, std::uint32_t k);
  // beta_0 .. beta_{k_max} from a single BFS plus one truncated Dijkstra.
  std::vector<double> beta_profile(Vertex q, std::uint32_t k_max);
  // Weighted distance to the n-th closest vertex (q itself is the first);
  // infinity when the component has fewer than n vertices.
  double sigma_n(Vertex q, std::uint64_t n);

  // d_L from q to every vertex (index 0 unused); infinity when unreachable.
  std::vector<double> weighted_distances_from(Vertex q);

 private:
  struct HeapEntry {
    double weight;
    std::uint32_t hops;
    Vertex vertex;
    bool operator>(const HeapEntry& o) const {
      if (weight != o.weight) return weight > o.weight;
      if (hops != o.hops) return hops > o.hops;
      return vertex > o.vertex;
    }
  };

  void check_vertex(Vertex v) const;
  void require_weights() const;
  void begin_search();
  bool seen(Vertex v) const { return stamp_[v] == epoch_; }
  void touch(Vertex v) { stamp_[v] = epoch_; }
  // Runs Dijkstra from q; visit(v) is called as each vertex is settled and
  // returns false to stop the search.
  template <class Visit>
  void dijkstra(Vertex q, Visit&& visit);
  template <class Visit>
  void bfs(Vertex q, std::uint32_t max_depth, Visit&& visit);

  const GrowthGraph* g_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> hops_;
  std::vector<Vertex> pred_;
  std::vector<EdgeId> pred_edge_;
  std::vector<std::uint8_t> settled_;
  std::vector<HeapEntry> heap_;
  std::vector<Vertex> queue_;

  // second search front, allocated on first use
  void ensure_reverse();
  std::vector<std::uint32_t> rstamp_;
  std::vector<double> rdist_;
  std::vector<std::uint32_t> rhops_;
  std::vector<std::uint8_t> rsettled_;
  std::vector<HeapEntry> rheap_;
  std::vector<Vertex> rqueue_;
};

std::optional<std::uint32_t> graph_distance(const GrowthGraph& g, Vertex u, Vertex v);
PathResult weighted_distance(const GrowthGraph& g, Vertex u, Vertex v);
BallView ball(const GrowthGraph& g, Vertex q, Metric metric, double radius);
std::vector<Vertex> boundary(const GrowthGraph& g, Vertex q, double k);
double beta_k(const GrowthGraph& g, Vertex q, std::uint32_t k);
double sigma_n(const GrowthGraph& g, Vertex q, std::uint64_t n);

// Two independent uniform vertices of [t]; u == v is allowed.
std::pair<Vertex, Vertex> sample_typical_pair(Vertex t, Rng& rng);

}  // namespace fppa
