#include "fppa/pa_graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "fppa/errors.hpp"

namespace fppa {

AttachmentRule AttachmentRule::affine(double gamma, double beta0) {
  return AttachmentRule({beta0, beta0 + gamma}, gamma);
}

AttachmentRule AttachmentRule::tabulated(std::vector<double> values) {
  if (values.size() < 2) throw ConfigError("attachment rule needs at least f(0) and f(1)");
  const double slope = values[values.size() - 1] - values[values.size() - 2];
  return AttachmentRule(std::move(values), slope);
}

double AttachmentRule::operator()(std::uint64_t k) const {
  if (k < values_.size()) return values_[k];
  const auto last = values_.size() - 1;
  return values_[last] + static_cast<double>(k - last) * slope_;
}

namespace {

void validate_rule(const AttachmentRule& rule) {
  const auto& f = rule.values();
  for (double v : f) {
    if (!std::isfinite(v) || v <= 0.0) throw ConfigError("attachment rule must be positive");
  }
  if (f[0] > 1.0) throw ConfigError("attachment rule requires f(0) <= 1");
  if (!(f[1] - f[0] < 1.0)) throw ConfigError("attachment rule requires f(1) - f(0) < 1");
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (f[k] < f[k - 1]) throw ConfigError("attachment rule must be nondecreasing");
  }
  for (std::size_t k = 2; k < f.size(); ++k) {
    const double second = f[k] - 2.0 * f[k - 1] + f[k - 2];
    if (second > 1e-12 * std::max(1.0, f[k])) throw ConfigError("attachment rule must be concave");
  }
}

struct ValidateVisitor {
  void operator()(const FpaParams& p) const {
    if (p.m < 1) throw ConfigError("FPA requires m >= 1");
    if (!std::isfinite(p.delta) || !(p.delta > -p.m)) throw ConfigError("FPA requires delta > -m");
  }
  void operator()(const VpaParams& p) const {
    if (!(p.gamma > 0.5 && p.gamma < 1.0)) throw ConfigError("VPA requires gamma in (1/2, 1)");
    if (!(p.beta0 > 0.0 && p.beta0 <= 1.0)) throw ConfigError("VPA requires beta0 in (0, 1]");
  }
  void operator()(const GvpaParams& p) const { validate_rule(p.rule); }
};

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate(const ModelParams& params) { std::visit(ValidateVisitor{}, params); }

AttachmentRule attachment_rule(const VpaParams& params) {
  return AttachmentRule::affine(params.gamma, params.beta0);
}

std::string variant_tag(const ModelParams& params) {
  struct Tag {
    std::string operator()(const FpaParams& p) const {
      return "fpa(m=" + std::to_string(p.m) + ",delta=" + format_number(p.delta) + ")";
    }
    std::string operator()(const VpaParams& p) const {
      return "vpa(gamma=" + format_number(p.gamma) + ",beta0=" + format_number(p.beta0) + ")";
    }
    std::string operator()(const GvpaParams& p) const {
      std::string s = "gvpa(f=";
      const auto& f = p.rule.values();
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ":";
        s += format_number(f[i]);
      }
      return s + ")";
    }
  };
  return std::visit(Tag{}, params);
}

// ---------------------------------------------------------------------------
// GrowthGraph

GrowthGraph::GrowthGraph(Vertex t, std::vector<Edge> edges, GraphProvenance provenance,
                         std::vector<double> weights)
    : t_(t), edges_(std::move(edges)), weights_(std::move(weights)),
      provenance_(std::move(provenance)) {
  if (t_ < 1) throw DomainError("graph needs at least one vertex");
  if (edges_.size() > std::numeric_limits<EdgeId>::max()) throw DomainError("too many edges");
  if (!weights_.empty() && weights_.size() != edges_.size()) {
    throw DomainError("weight vector length must match the edge count");
  }
  Vertex last_born = 0;
  for (const Edge& e : edges_) {
    if (e.born != e.src) throw DomainError("edge birth time must equal its arriving endpoint");
    if (e.src > t_ || e.dst < 1 || !(e.dst < e.src)) {
      throw DomainError("edge endpoints must satisfy 1 <= dst < src <= t");
    }
    if (e.born < last_born) throw DomainError("edges must be in nondecreasing birth order");
    last_born = e.born;
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw DomainError("edge weights must be non-negative");
  }
  build_index();
}

void GrowthGraph::build_index() {
  offsets_.assign(static_cast<std::size_t>(t_) + 2, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.src + 1];
    ++offsets_[e.dst + 1];
  }
  for (std::size_t v = 1; v < offsets_.size(); ++v) offsets_[v] += offsets_[v - 1];
  arcs_.resize(2 * edges_.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    arcs_[fill[e.src]++] = Arc{e.dst, id};
    arcs_[fill[e.dst]++] = Arc{e.src, id};
  }
}

double GrowthGraph::weight(EdgeId e) const {
  if (weights_.empty()) throw StateError("graph has no edge weights assigned");
  return weights_[e];
}

GrowthGraph GrowthGraph::with_weights(std::vector<double> weights) const {
  GrowthGraph copy = *this;
  if (weights.size() != edges_.size()) throw DomainError("weight vector length mismatch");
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("edge weights must be non-negative");
  }
  copy.weights_ = std::move(weights);
  return copy;
}

// ---------------------------------------------------------------------------
// FPA

double connection_normalizer(Vertex t, int j, int m, double delta) {
  if (t < 2 || j < 1 || j > m) throw DomainError("connection_normalizer requires t >= 2, 1 <= j <= m");
  return (static_cast<double>(t) - 2.0) * (delta + 2.0 * m) + (j - 1) + m + delta;
}

FpaSampler::FpaSampler(int m, double delta) : m_(m), delta_(delta) {
  validate(FpaParams{m, delta});
}

std::vector<double> FpaSampler::next_target_law(Vertex s) const {
  std::vector<double> law(s, 0.0);
  const double edge = edge_mass();
  const double total = edge + vertex_mass(s);
  for (Vertex v : targets_) law[v] += 1.0;
  for (Vertex v = 1; v < s; ++v) law[v] = (law[v] + (m_ + delta_)) / total;
  return law;
}

Vertex FpaSampler::draw(Vertex s, Rng& rng) {
  const double edge = edge_mass();
  const double total = edge + vertex_mass(s);
  Vertex target;
  if (rng.uniform() * total < edge) {
    target = targets_[rng.below(targets_.size())];
  } else {
    target = static_cast<Vertex>(1 + rng.below(s - 1));
  }
  targets_.push_back(target);
  return target;
}

GrowthGraph generate_fpa(const FpaParams& params, Vertex t, std::uint64_t seed) {
  validate(params);
  if (t < 2) throw DomainError("generate_fpa requires t >= 2");
  Rng rng(seed);
  FpaSampler sampler(params.m, params.delta);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(params.m) * (t - 1));
  for (Vertex s = 2; s <= t; ++s) {
    for (int j = 1; j <= params.m; ++j) {
      edges.push_back(Edge{s, s, sampler.draw(s, rng)});
    }
  }
  return GrowthGraph(t, std::move(edges), GraphProvenance{variant_tag(params), seed});
}

// ---------------------------------------------------------------------------
// GVPA

namespace {

// Vertices grouped by current indegree. Buckets are sparse: empty ones are
// erased. pos[v] is v's index inside its bucket.
class IndegreeBuckets {
 public:
  explicit IndegreeBuckets(Vertex t) : indegree_(t + 1, 0), pos_(t + 1, 0) {}

  void add_new(Vertex v) {
    auto& b = buckets_[0];
    pos_[v] = static_cast<std::uint32_t>(b.size());
    b.push_back(v);
  }

  void promote(Vertex v) {
    const std::uint32_t k = indegree_[v];
    auto it = buckets_.find(k);
    auto& from = it->second;
    const Vertex moved = from.back();
    from[pos_[v]] = moved;
    pos_[moved] = pos_[v];
    from.pop_back();
    if (from.empty()) buckets_.erase(it);
    auto& to = buckets_[k + 1];
    pos_[v] = static_cast<std::uint32_t>(to.size());
    to.push_back(v);
    indegree_[v] = k + 1;
  }

  const std::map<std::uint32_t, std::vector<Vertex>>& buckets() const { return buckets_; }

 private:
  std::map<std::uint32_t, std::vector<Vertex>> buckets_;
  std::vector<std::uint32_t> indegree_;
  std::vector<std::uint32_t> pos_;
};

// Floyd's algorithm: `count` distinct indices uniform from [0, n).
void sample_distinct(std::uint64_t n, std::uint64_t count, Rng& rng,
                     std::vector<std::uint64_t>& out) {
  out.clear();
  for (std::uint64_t j = n - count; j < n; ++j) {
    const std::uint64_t r = rng.below(j + 1);
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(r);
    } else {
      out.push_back(j);
    }
  }
}

}  // namespace

GrowthGraph generate_gvpa(const AttachmentRule& rule, Vertex t, std::uint64_t seed,
                          const std::string& variant) {
  validate(GvpaParams{rule});
  if (t < 2) throw DomainError("generate_gvpa requires t >= 2");
  Rng rng(seed);
  IndegreeBuckets buckets(t);
  buckets.add_new(1);
  std::vector<Edge> edges;
  std::vector<Vertex> chosen;
  std::vector<std::uint64_t> picks;
  std::uint64_t clamp_events = 0;
  for (Vertex s = 2; s <= t; ++s) {
    chosen.clear();
    for (const auto& [k, members] : buckets.buckets()) {
      double p = rule(k) / s;
      if (p > 1.0) {
        p = 1.0;
        ++clamp_events;
      }
      const std::uint64_t hits = rng.binomial(members.size(), p);
      if (hits == 0) continue;
      sample_distinct(members.size(), hits, rng, picks);
      for (auto i : picks) chosen.push_back(members[i]);
    }
    std::sort(chosen.begin(), chosen.end());
    for (Vertex v : chosen) {
      edges.push_back(Edge{s, s, v});
      buckets.promote(v);
    }
    buckets.add_new(s);
  }
  if (clamp_events > 0) {
    std::clog << "warning: GVPA connection probability exceeded 1 and was clamped "
              << clamp_events << " time(s); check the attachment rule\n";
  }
  return GrowthGraph(t, std::move(edges),
                     GraphProvenance{variant.empty() ? variant_tag(GvpaParams{rule}) : variant, seed});
}

GrowthGraph generate(const ModelParams& params, Vertex t, std::uint64_t seed) {
  validate(params);
  struct Gen {
    Vertex t;
    std::uint64_t seed;
    GrowthGraph operator()(const FpaParams& p) const { return generate_fpa(p, t, seed); }
    GrowthGraph operator()(const VpaParams& p) const {
      return generate_gvpa(attachment_rule(p), t, seed, variant_tag(p));
    }
    GrowthGraph operator()(const GvpaParams& p) const { return generate_gvpa(p.rule, t, seed); }
  };
  return std::visit(Gen{t, seed}, params);
}

// ---------------------------------------------------------------------------
// Queries

namespace {

void check_time(const GrowthGraph& g, Vertex v, Vertex s) {
  if (v < 1 || s > g.size() || v > s) throw DomainError("degree query requires 1 <= v <= s <= t");
}

}  // namespace

std::uint32_t degree_at(const GrowthGraph& g, Vertex v, Vertex s) {
  check_time(g, v, s);
  const auto arcs = g.arcs(v);
  // Arcs are in edge-id order, hence in birth order; birth = max(v, to).
  auto it = std::partition_point(arcs.begin(), arcs.end(),
                                 [v, s](const Arc& a) { return std::max(v, a.to) <= s; });
  return static_cast<std::uint32_t>(it - arcs.begin());
}

std::uint32_t indegree_at(const GrowthGraph& g, Vertex v, Vertex s) {
  check_time(g, v, s);
  std::uint32_t n = 0;
  for (const Arc& a : g.arcs(v)) {
    if (a.to > s) break;
    if (a.to > v) ++n;
  }
  return n;
}

std::vector<std::uint32_t> degrees_at(const GrowthGraph& g, Vertex s) {
  if (s < 1 || s > g.size()) throw DomainError("degrees_at requires 1 <= s <= t");
  std::vector<std::uint32_t> deg(static_cast<std::size_t>(s) + 1, 0);
  for (const Edge& e : g.edges()) {
    if (e.born > s) break;
    ++deg[e.src];
    ++deg[e.dst];
  }
  return deg;
}

double edge_uniform(std::uint64_t seed, EdgeId edge) {
  return bits_to_open_unit(mix64(mix64(seed) ^ (0x9e3779b97f4a7c15ULL * (edge + 1ULL))));
}

GrowthGraph assign_weights(const GrowthGraph& g, const WeightDistribution& dist,
                           std::uint64_t seed) {
  std::vector<double> w(g.edge_count());
  for (EdgeId i = 0; i < w.size(); ++i) w[i] = dist.quantile(edge_uniform(seed, i));
  return g.with_weights(std::move(w));
}

GrowthGraph snapshot(const GrowthGraph& g, Vertex s) {
  if (s < 2 || s > g.size()) throw DomainError("snapshot requires 2 <= s <= t");
  const auto edges = g.edges();
  auto end = std::partition_point(edges.begin(), edges.end(),
                                  [s](const Edge& e) { return e.born <= s; });
  const auto count = static_cast<std::size_t>(end - edges.begin());
  std::vector<double> weights;
  if (!g.weights().empty()) weights.assign(g.weights().begin(), g.weights().begin() + count);
  return GrowthGraph(s, std::vector<Edge>(edges.begin(), end), g.provenance(), std::move(weights));
}

std::size_t estimate_graph_bytes(const ModelParams& params, Vertex t) {
  struct MeanOut {
    double operator()(const FpaParams& p) const { return p.m; }
    double operator()(const VpaParams& p) const { return p.beta0 / (1.0 - p.gamma); }
    double operator()(const GvpaParams& p) const {
      const double g = p.rule.limit_slope();
      return g < 1.0 ? p.rule(0) / (1.0 - g) : 1e3;
    }
  };
  const double edges = std::visit(MeanOut{}, params) * t;
  // edge record + weight + two arcs, vertex offsets + per-query scratch
  const double bytes = edges * (sizeof(Edge) + sizeof(double) + 2 * sizeof(Arc)) +
                       static_cast<double>(t) * (sizeof(std::uint32_t) + 48);
  return static_cast<std::size_t>(bytes);
}

}  // namespace fppa
