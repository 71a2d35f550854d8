#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fppa::testing {

namespace {

struct Search {
  const GrowthGraph& g;
  Vertex target;
  std::vector<std::uint8_t> on_path;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  BruteForcePaths best;
  bool found = false;

  // true if candidate (w, h, path) beats the incumbent
  bool better(double w, std::uint32_t h) const {
    if (!found) return true;
    if (w != best.d_L) return w < best.d_L;
    if (h != *best.d_H) return h < *best.d_H;
    // read both sequences from the target backwards
    const auto& a = vertices;
    const auto& b = best.vertices;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Vertex x = a[a.size() - 1 - i];
      const Vertex y = b[b.size() - 1 - i];
      if (x != y) return x < y;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const EdgeId x = edges[edges.size() - 1 - i];
      const EdgeId y = best.edges[best.edges.size() - 1 - i];
      if (x != y) {
        const double wx = g.weight(x);
        const double wy = g.weight(y);
        if (wx != wy) return wx < wy;
        return x < y;
      }
    }
    return false;
  }

  void dfs(Vertex x, double w, std::uint32_t h) {
    if (x == target) {
      if (!best.d_G || h < *best.d_G) best.d_G = h;
      if (g.has_weights() && better(w, h)) {
        best.d_L = w;
        best.d_H = h;
        best.vertices = vertices;
        best.edges = edges;
        found = true;
      }
      return;
    }
    for (const Arc& a : g.arcs(x)) {
      if (on_path[a.to]) continue;
      on_path[a.to] = 1;
      vertices.push_back(a.to);
      edges.push_back(a.edge);
      dfs(a.to, g.has_weights() ? w + g.weight(a.edge) : 0.0, h + 1);
      edges.pop_back();
      vertices.pop_back();
      on_path[a.to] = 0;
    }
  }
};

}  // namespace

BruteForcePaths brute_force_paths(const GrowthGraph& g, Vertex u, Vertex v) {
  Search s{g, v, std::vector<std::uint8_t>(g.size() + 1, 0), {u}, {}, {}, false};
  s.on_path[u] = 1;
  s.dfs(u, 0.0, 0);
  if (!s.found) s.best.d_L = std::numeric_limits<double>::infinity();
  return s.best;
}

std::vector<double> naive_fpa_law(const std::vector<std::uint32_t>& indegree, Vertex s, int m,
                                  double delta) {
  std::vector<double> law(s, 0.0);
  double total = 0.0;
  for (Vertex v = 1; v < s; ++v) {
    law[v] = indegree[v] + m + delta;
    total += law[v];
  }
  for (Vertex v = 1; v < s; ++v) law[v] /= total;
  return law;
}

GrowthGraph naive_fpa(int m, double delta, Vertex t, Rng& rng) {
  std::vector<std::uint32_t> indegree(t + 1, 0);
  std::vector<Edge> edges;
  for (Vertex s = 2; s <= t; ++s) {
    for (int j = 1; j <= m; ++j) {
      const auto law = naive_fpa_law(indegree, s, m, delta);
      double u = rng.uniform();
      Vertex pick = s - 1;
      for (Vertex v = 1; v < s; ++v) {
        if (u < law[v]) {
          pick = v;
          break;
        }
        u -= law[v];
      }
      edges.push_back({s, s, pick});
      ++indegree[pick];
    }
  }
  return GrowthGraph(t, std::move(edges));
}

GrowthGraph naive_gvpa(const AttachmentRule& f, Vertex t, Rng& rng) {
  std::vector<std::uint32_t> indegree(t + 1, 0);
  std::vector<Edge> edges;
  for (Vertex s = 2; s <= t; ++s) {
    std::vector<Vertex> chosen;
    for (Vertex v = 1; v < s; ++v) {
      const double p = std::min(1.0, f(indegree[v]) / s);
      if (rng.uniform() < p) chosen.push_back(v);
    }
    for (Vertex v : chosen) {
      edges.push_back({s, s, v});
      ++indegree[v];
    }
  }
  return GrowthGraph(t, std::move(edges));
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  if (d == 0.0) return {0.0, 1.0};
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

std::vector<std::uint32_t> naive_degrees(const GrowthGraph& g, Vertex s) {
  std::vector<std::uint32_t> deg(s + 1, 0);
  for (const Edge& e : g.edges()) {
    if (e.born > s) continue;
    ++deg[e.src];
    ++deg[e.dst];
  }
  return deg;
}

}  // namespace fppa::testing
