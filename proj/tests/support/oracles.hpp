#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fppa/pa_graph.hpp"
#include "fppa/rng.hpp"

namespace fppa::testing {

// Exhaustive enumeration of simple paths. Path weights are summed from u
// outwards, like a single-source search would.
struct BruteForcePaths {
  std::optional<std::uint32_t> d_G;
  double d_L = 0.0;
  std::optional<std::uint32_t> d_H;
  // Optimal path under the documented tie rule: among lexicographically
  // minimal (weight, hops) paths, the one whose vertex sequence read from v
  // back to u is smallest; parallel edges resolved to the lightest, then the
  // lowest edge id.
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
};

BruteForcePaths brute_force_paths(const GrowthGraph& g, Vertex u, Vertex v);

// Connection law of the next FPA edge recomputed from scratch: for each older
// vertex its indegree plus m + delta, divided by the sum of those numerators.
// indegree has index 0 unused and covers 1..s-1.
std::vector<double> naive_fpa_law(const std::vector<std::uint32_t>& indegree, Vertex s, int m,
                                  double delta);

// Reference FPA generator: recomputes every numerator at every step.
GrowthGraph naive_fpa(int m, double delta, Vertex t, Rng& rng);

// Reference GVPA generator: one coin per older vertex.
GrowthGraph naive_gvpa(const AttachmentRule& f, Vertex t, Rng& rng);

// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Degree of every vertex counted directly from the edge records.
std::vector<std::uint32_t> naive_degrees(const GrowthGraph& g, Vertex s);

}  // namespace fppa::testing
