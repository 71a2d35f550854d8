#include "fppa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fppa/errors.hpp"

namespace fppa {

DistanceEngine::DistanceEngine(const GrowthGraph& g)
    : g_(&g),
      stamp_(static_cast<std::size_t>(g.size()) + 1, 0),
      dist_(static_cast<std::size_t>(g.size()) + 1, kInfinity),
      hops_(static_cast<std::size_t>(g.size()) + 1, 0),
      pred_(static_cast<std::size_t>(g.size()) + 1, 0),
      pred_edge_(static_cast<std::size_t>(g.size()) + 1, 0),
      settled_(static_cast<std::size_t>(g.size()) + 1, 0) {}

void DistanceEngine::check_vertex(Vertex v) const {
  if (v < 1 || v > g_->size()) throw DomainError("vertex out of range");
}

void DistanceEngine::require_weights() const {
  if (!g_->has_weights()) throw StateError("weighted query on a graph without weights");
}

void DistanceEngine::begin_search() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(rstamp_.begin(), rstamp_.end(), 0);
    epoch_ = 1;
  }
}

void DistanceEngine::ensure_reverse() {
  if (!rstamp_.empty()) return;
  const std::size_t n = static_cast<std::size_t>(g_->size()) + 1;
  rstamp_.assign(n, 0);
  rdist_.assign(n, kInfinity);
  rhops_.assign(n, 0);
  rsettled_.assign(n, 0);
}

template <class Visit>
void DistanceEngine::dijkstra(Vertex q, Visit&& visit) {
  begin_search();
  const auto weights = g_->weights();
  heap_.clear();
  touch(q);
  dist_[q] = 0.0;
  hops_[q] = 0;
  pred_[q] = 0;
  settled_[q] = 0;
  heap_.push_back({0.0, 0, q});
  const std::greater<HeapEntry> cmp;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    const HeapEntry top = heap_.back();
    heap_.pop_back();
    const Vertex x = top.vertex;
    if (settled_[x] || top.weight != dist_[x] || top.hops != hops_[x]) continue;
    settled_[x] = 1;
    if (!visit(x)) return;
    for (const Arc& a : g_->arcs(x)) {
      const Vertex y = a.to;
      const double nd = dist_[x] + weights[a.edge];
      const std::uint32_t nh = hops_[x] + 1;
      if (!seen(y)) {
        touch(y);
        settled_[y] = 0;
      } else if (settled_[y]) {
        continue;
      } else if (nd > dist_[y] || (nd == dist_[y] && nh > hops_[y])) {
        continue;
      } else if (nd == dist_[y] && nh == hops_[y]) {
        if (x < pred_[y] || (x == pred_[y] && weights[a.edge] < weights[pred_edge_[y]])) {
          pred_[y] = x;
          pred_edge_[y] = a.edge;
        }
        continue;
      }
      dist_[y] = nd;
      hops_[y] = nh;
      pred_[y] = x;
      pred_edge_[y] = a.edge;
      heap_.push_back({nd, nh, y});
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    }
  }
}

template <class Visit>
void DistanceEngine::bfs(Vertex q, std::uint32_t max_depth, Visit&& visit) {
  begin_search();
  queue_.clear();
  touch(q);
  hops_[q] = 0;
  queue_.push_back(q);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex x = queue_[head];
    if (!visit(x, hops_[x])) return;
    if (hops_[x] == max_depth) continue;
    for (const Arc& a : g_->arcs(x)) {
      if (seen(a.to)) continue;
      touch(a.to);
      hops_[a.to] = hops_[x] + 1;
      queue_.push_back(a.to);
    }
  }
}

std::optional<std::uint32_t> DistanceEngine::graph_distance(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  std::optional<std::uint32_t> result;
  bfs(u, std::numeric_limits<std::uint32_t>::max(), [&](Vertex x, std::uint32_t d) {
    if (x == v) {
      result = d;
      return false;
    }
    return true;
  });
  return result;
}

PathResult DistanceEngine::weighted_distance(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  require_weights();
  PathResult result;
  bool found = false;
  dijkstra(u, [&](Vertex x) {
    if (x == v) {
      found = true;
      return false;
    }
    return true;
  });
  if (!found) return result;
  result.weight = dist_[v];
  result.hops = hops_[v];
  for (Vertex x = v; x != u; x = pred_[x]) {
    result.vertices.push_back(x);
    result.edges.push_back(pred_edge_[x]);
  }
  result.vertices.push_back(u);
  std::reverse(result.vertices.begin(), result.vertices.end());
  std::reverse(result.edges.begin(), result.edges.end());
  return result;
}

std::optional<std::uint32_t> DistanceEngine::graph_distance_bidirectional(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  ensure_reverse();
  begin_search();
  touch(u);
  hops_[u] = 0;
  rstamp_[v] = epoch_;
  rhops_[v] = 0;
  queue_.assign(1, u);
  rqueue_.assign(1, v);
  std::vector<Vertex> next;
  while (!queue_.empty() && !rqueue_.empty()) {
    // Expand the smaller frontier one full level. The first level that
    // touches the other side yields the distance.
    const bool forward = queue_.size() <= rqueue_.size();
    auto& frontier = forward ? queue_ : rqueue_;
    auto& own_stamp = forward ? stamp_ : rstamp_;
    auto& own_hops = forward ? hops_ : rhops_;
    const auto& other_stamp = forward ? rstamp_ : stamp_;
    const auto& other_hops = forward ? rhops_ : hops_;
    std::optional<std::uint32_t> best;
    next.clear();
    for (Vertex x : frontier) {
      for (const Arc& a : g_->arcs(x)) {
        const Vertex y = a.to;
        if (other_stamp[y] == epoch_) {
          const std::uint32_t d = own_hops[x] + 1 + other_hops[y];
          if (!best || d < *best) best = d;
        }
        if (own_stamp[y] != epoch_) {
          own_stamp[y] = epoch_;
          own_hops[y] = own_hops[x] + 1;
          next.push_back(y);
        }
      }
    }
    if (best) return best;
    frontier.swap(next);
  }
  return std::nullopt;
}

PairDistances DistanceEngine::pair_distances(Vertex u, Vertex v) {
  PairDistances out;
  out.d_G = graph_distance_bidirectional(u, v);
  require_weights();
  if (!out.d_G) return out;
  if (u == v) {
    out.d_L = 0.0;
    out.d_H = 0;
    return out;
  }
  const auto weights = g_->weights();
  begin_search();
  auto less = [](double w1, std::uint32_t h1, double w2, std::uint32_t h2) {
    return w1 < w2 || (w1 == w2 && h1 < h2);
  };
  touch(u);
  dist_[u] = 0.0;
  hops_[u] = 0;
  settled_[u] = 0;
  rstamp_[v] = epoch_;
  rdist_[v] = 0.0;
  rhops_[v] = 0;
  rsettled_[v] = 0;
  heap_.assign(1, {0.0, 0, u});
  rheap_.assign(1, {0.0, 0, v});
  double best_w = kInfinity;
  std::uint32_t best_h = std::numeric_limits<std::uint32_t>::max();
  const std::greater<HeapEntry> cmp;
  auto drop_stale = [&](std::vector<HeapEntry>& heap, const std::vector<double>& dist,
                        const std::vector<std::uint32_t>& hops, const std::vector<std::uint8_t>& settled) {
    while (!heap.empty()) {
      const HeapEntry& top = heap.front();
      if (!settled[top.vertex] && top.weight == dist[top.vertex] && top.hops == hops[top.vertex]) return;
      std::pop_heap(heap.begin(), heap.end(), cmp);
      heap.pop_back();
    }
  };
  for (;;) {
    drop_stale(heap_, dist_, hops_, settled_);
    drop_stale(rheap_, rdist_, rhops_, rsettled_);
    if (heap_.empty() || rheap_.empty()) break;
    // Stop once no path through both unsettled fronts can beat the best meeting.
    if (!less(heap_.front().weight + rheap_.front().weight, heap_.front().hops + rheap_.front().hops,
              best_w, best_h)) {
      break;
    }
    const bool forward = heap_.size() <= rheap_.size();
    auto& heap = forward ? heap_ : rheap_;
    auto& own_stamp = forward ? stamp_ : rstamp_;
    auto& own_dist = forward ? dist_ : rdist_;
    auto& own_hops = forward ? hops_ : rhops_;
    auto& own_settled = forward ? settled_ : rsettled_;
    const auto& other_stamp = forward ? rstamp_ : stamp_;
    const auto& other_dist = forward ? rdist_ : dist_;
    const auto& other_hops = forward ? rhops_ : hops_;
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const Vertex x = heap.back().vertex;
    heap.pop_back();
    own_settled[x] = 1;
    for (const Arc& a : g_->arcs(x)) {
      const Vertex y = a.to;
      const double nd = own_dist[x] + weights[a.edge];
      const std::uint32_t nh = own_hops[x] + 1;
      if (other_stamp[y] == epoch_) {
        const double w = nd + other_dist[y];
        const std::uint32_t h = nh + other_hops[y];
        if (less(w, h, best_w, best_h)) {
          best_w = w;
          best_h = h;
        }
      }
      if (own_stamp[y] != epoch_) {
        own_stamp[y] = epoch_;
        own_settled[y] = 0;
      } else if (own_settled[y] || !less(nd, nh, own_dist[y], own_hops[y])) {
        continue;
      }
      own_dist[y] = nd;
      own_hops[y] = nh;
      heap.push_back({nd, nh, y});
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
  }
  out.d_L = best_w;
  out.d_H = best_h;
  return out;
}

BallView DistanceEngine::ball(Vertex q, Metric metric, double radius) {
  check_vertex(q);
  if (!(radius >= 0.0)) throw DomainError("ball radius must be non-negative");
  BallView view{q, metric, radius, {}};
  if (metric == Metric::Graph) {
    const double depth = std::floor(radius);
    const auto max_depth = depth >= 4294967295.0 ? std::numeric_limits<std::uint32_t>::max()
                                                 : static_cast<std::uint32_t>(depth);
    bfs(q, max_depth, [&](Vertex x, std::uint32_t d) {
      view.members.push_back({x, static_cast<double>(d)});
      return true;
    });
  } else {
    require_weights();
    dijkstra(q, [&](Vertex x) {
      if (dist_[x] > radius) return false;
      view.members.push_back({x, dist_[x]});
      return true;
    });
  }
  return view;
}

std::vector<Vertex> DistanceEngine::boundary(Vertex q, double k) {
  check_vertex(q);
  if (!(k >= 0.0)) throw DomainError("boundary radius must be non-negative");
  const auto level = static_cast<std::uint32_t>(std::min(std::floor(k), 4294967295.0));
  std::vector<Vertex> out;
  bfs(q, level, [&](Vertex x, std::uint32_t d) {
    if (d == level) out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> DistanceEngine::beta_profile(Vertex q, std::uint32_t k_max) {
  check_vertex(q);
  require_weights();
  std::vector<double> beta(static_cast<std::size_t>(k_max) + 1, kInfinity);
  // Graph levels first; the level array is kept separately because the
  // Dijkstra pass reuses the scratch buffers.
  std::vector<std::pair<Vertex, std::uint32_t>> levels;
  std::uint32_t deepest = 0;
  bfs(q, k_max, [&](Vertex x, std::uint32_t d) {
    levels.emplace_back(x, d);
    deepest = std::max(deepest, d);
    return true;
  });
  std::sort(levels.begin(), levels.end());
  auto level_of = [&](Vertex x) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(levels.begin(), levels.end(), std::make_pair(x, 0u));
    if (it == levels.end() || it->first != x) return std::nullopt;
    return it->second;
  };
  std::uint32_t remaining = deepest + 1;
  dijkstra(q, [&](Vertex x) {
    if (const auto lvl = level_of(x); lvl && beta[*lvl] == kInfinity) {
      beta[*lvl] = dist_[x];
      if (--remaining == 0) return false;
    }
    return true;
  });
  return beta;
}

double DistanceEngine::beta_k(Vertex q, std::uint32_t k) { return beta_profile(q, k)[k]; }

double DistanceEngine::sigma_n(Vertex q, std::uint64_t n) {
  check_vertex(q);
  require_weights();
  if (n < 1) throw DomainError("sigma_n requires n >= 1");
  double result = kInfinity;
  std::uint64_t count = 0;
  dijkstra(q, [&](Vertex x) {
    if (++count == n) {
      result = dist_[x];
      return false;
    }
    return true;
  });
  return result;
}

std::vector<double> DistanceEngine::weighted_distances_from(Vertex q) {
  check_vertex(q);
  require_weights();
  std::vector<double> out(static_cast<std::size_t>(g_->size()) + 1, kInfinity);
  dijkstra(q, [&](Vertex x) {
    out[x] = dist_[x];
    return true;
  });
  return out;
}

std::optional<std::uint32_t> graph_distance(const GrowthGraph& g, Vertex u, Vertex v) {
  return DistanceEngine(g).graph_distance(u, v);
}
PathResult weighted_distance(const GrowthGraph& g, Vertex u, Vertex v) {
  return DistanceEngine(g).weighted_distance(u, v);
}
BallView ball(const GrowthGraph& g, Vertex q, Metric metric, double radius) {
  return DistanceEngine(g).ball(q, metric, radius);
}
std::vector<Vertex> boundary(const GrowthGraph& g, Vertex q, double k) {
  return DistanceEngine(g).boundary(q, k);
}
double beta_k(const GrowthGraph& g, Vertex q, std::uint32_t k) {
  return DistanceEngine(g).beta_k(q, k);
}
double sigma_n(const GrowthGraph& g, Vertex q, std::uint64_t n) {
  return DistanceEngine(g).sigma_n(q, n);
}

std::pair<Vertex, Vertex> sample_typical_pair(Vertex t, Rng& rng) {
  if (t < 1) throw DomainError("sample_typical_pair requires t >= 1");
  const auto u = static_cast<Vertex>(1 + rng.below(t));
  const auto v = static_cast<Vertex>(1 + rng.below(t));
  return {u, v};
}

}  // namespace fppa
