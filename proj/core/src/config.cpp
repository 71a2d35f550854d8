#include "fppa/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fppa/errors.hpp"

namespace fppa {

using nlohmann::json;

namespace {

constexpr std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::DistanceScaling, "distance_scaling"},
    {ExperimentKind::Hopcount, "hopcount"},
    {ExperimentKind::ExplosionVsConservative, "explosion_vs_conservative"},
    {ExperimentKind::BetaKCentering, "beta_k_centering"},
    {ExperimentKind::DegreeTail, "degree_tail"},
    {ExperimentKind::GreedyValidation, "greedy_validation"},
    {ExperimentKind::InnerCoreDiameter, "inner_core_diameter"},
};

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ConfigError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

double number(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number()) throw ConfigError(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

template <class T>
T integer(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("field '") + name + "' must be a non-negative integer");
  }
  return v.get<T>();
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw ConfigError("unknown experiment kind '" + name + "'");
}

WeightDistribution distribution_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("distribution descriptor must be a JSON object");
  const json& fam = field(j, "family");
  if (!fam.is_string()) throw ConfigError("'family' must be a string");
  const auto family = fam.get<std::string>();
  if (family == "constant") return WeightDistribution::constant(number(j, "value"));
  if (family == "uniform") return WeightDistribution::uniform(number(j, "low"), number(j, "high"));
  if (family == "exponential") return WeightDistribution::exponential(number(j, "rate"));
  if (family == "weibull") return WeightDistribution::weibull(number(j, "shape"), number(j, "scale"));
  if (family == "shifted") {
    return WeightDistribution::shifted(distribution_from_json(field(j, "base")), number(j, "shift"));
  }
  if (family == "quantile_table") {
    const json& pts = field(j, "points");
    if (!pts.is_array()) throw ConfigError("'points' must be an array of [p, x] pairs");
    std::vector<std::pair<double, double>> points;
    for (const json& pt : pts) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        throw ConfigError("each quantile_table point must be [p, x]");
      }
      points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    return WeightDistribution::quantile_table(std::move(points));
  }
  throw ConfigError("unknown distribution family '" + family + "'");
}

json to_json(const WeightDistribution& dist) {
  struct ToJson {
    json operator()(const ConstantLaw& c) const { return {{"family", "constant"}, {"value", c.value}}; }
    json operator()(const UniformLaw& u) const {
      return {{"family", "uniform"}, {"low", u.low}, {"high", u.high}};
    }
    json operator()(const ExponentialLaw& e) const { return {{"family", "exponential"}, {"rate", e.rate}}; }
    json operator()(const WeibullLaw& w) const {
      return {{"family", "weibull"}, {"shape", w.shape}, {"scale", w.scale}};
    }
    json operator()(const ShiftedLaw& s) const {
      return {{"family", "shifted"}, {"shift", s.shift}, {"base", to_json(*s.base)}};
    }
    json operator()(const QuantileTableLaw& t) const {
      json pts = json::array();
      for (const auto& [p, x] : t.points) pts.push_back({p, x});
      return {{"family", "quantile_table"}, {"points", pts}};
    }
  };
  return std::visit(ToJson{}, dist.family());
}

ModelParams model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("model descriptor must be a JSON object");
  const json& var = field(j, "variant");
  if (!var.is_string()) throw ConfigError("'variant' must be a string");
  const auto variant = var.get<std::string>();
  ModelParams params;
  if (variant == "fpa") {
    const json& m = field(j, "m");
    if (!m.is_number_integer()) throw ConfigError("'m' must be an integer");
    params = FpaParams{m.get<int>(), number(j, "delta")};
  } else if (variant == "vpa") {
    params = VpaParams{number(j, "gamma"), number(j, "beta0")};
  } else if (variant == "gvpa") {
    const json& rule = field(j, "rule");
    if (!rule.is_array()) throw ConfigError("'rule' must be an array of f(k) values");
    std::vector<double> values;
    for (const json& v : rule) {
      if (!v.is_number()) throw ConfigError("'rule' entries must be numbers");
      values.push_back(v.get<double>());
    }
    params = GvpaParams{AttachmentRule::tabulated(std::move(values))};
  } else {
    throw ConfigError("unknown model variant '" + variant + "'");
  }
  validate(params);
  return params;
}

json to_json(const ModelParams& model) {
  struct ToJson {
    json operator()(const FpaParams& p) const { return {{"variant", "fpa"}, {"m", p.m}, {"delta", p.delta}}; }
    json operator()(const VpaParams& p) const {
      return {{"variant", "vpa"}, {"gamma", p.gamma}, {"beta0", p.beta0}};
    }
    json operator()(const GvpaParams& p) const {
      return {{"variant", "gvpa"}, {"rule", p.rule.values()}};
    }
  };
  return std::visit(ToJson{}, model);
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion) {
    throw ConfigError("unsupported config schema_version");
  }
  ExperimentConfig c;
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw ConfigError("'kind' must be a string");
  c.kind = experiment_kind_from_string(kind.get<std::string>());
  c.model = model_from_json(field(j, "model"));
  const json& sizes = field(j, "sizes");
  if (!sizes.is_array() || sizes.empty()) throw ConfigError("'sizes' must be a non-empty array");
  for (const json& s : sizes) {
    if (!s.is_number_integer() || s.get<long long>() < 3 || s.get<long long>() > 4000000000LL) {
      throw ConfigError("every size must be an integer >= 3");
    }
    c.sizes.push_back(s.get<Vertex>());
  }
  if (j.contains("alpha")) c.alpha = number(j, "alpha");
  if (!(c.alpha >= 0.5 && c.alpha < 1.0)) throw ConfigError("'alpha' must lie in [1/2, 1)");
  c.weights = distribution_from_json(field(j, "weights"));
  if (j.contains("compare_weights")) c.compare_weights = distribution_from_json(j.at("compare_weights"));
  if (c.kind == ExperimentKind::ExplosionVsConservative && !c.compare_weights) {
    throw ConfigError("explosion_vs_conservative needs 'compare_weights'");
  }
  if (j.contains("pairs")) c.pairs = integer<std::uint32_t>(j, "pairs");
  if (j.contains("replicas")) c.replicas = integer<std::uint32_t>(j, "replicas");
  if (c.pairs < 1) throw ConfigError("'pairs' must be at least 1");
  if (c.replicas < 1) throw ConfigError("'replicas' must be at least 1");
  c.seed = integer<std::uint64_t>(j, "seed");
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("'output' must be a string");
    c.output = j.at("output").get<std::string>();
  }
  if (j.contains("k_max")) c.k_max = integer<std::uint32_t>(j, "k_max");
  if (j.contains("s0")) c.s0 = number(j, "s0");
  if (!(c.s0 > 1.0)) throw ConfigError("'s0' must exceed 1");
  if (j.contains("top_fraction")) c.top_fraction = number(j, "top_fraction");
  if (!(c.top_fraction > 0.0 && c.top_fraction < 1.0)) throw ConfigError("'top_fraction' must lie in (0,1)");
  if (j.contains("c_tau")) c.c_tau = number(j, "c_tau");
  if (j.contains("memory_limit_mb")) {
    c.memory_limit_bytes = integer<std::size_t>(j, "memory_limit_mb") * std::size_t{1024 * 1024};
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j = {
      {"schema_version", kSchemaVersion},
      {"kind", to_string(c.kind)},
      {"model", to_json(c.model)},
      {"sizes", c.sizes},
      {"alpha", c.alpha},
      {"weights", to_json(c.weights)},
      {"pairs", c.pairs},
      {"replicas", c.replicas},
      {"seed", c.seed},
      {"output", c.output},
      {"k_max", c.k_max},
      {"s0", c.s0},
      {"top_fraction", c.top_fraction},
      {"c_tau", c.c_tau},
  };
  if (c.compare_weights) j["compare_weights"] = to_json(*c.compare_weights);
  if (c.memory_limit_bytes) j["memory_limit_mb"] = *c.memory_limit_bytes / (1024 * 1024);
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string config_digest(const ExperimentConfig& config) {
  json j = to_json(config);
  j.erase("output");  // where results go does not change them
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fppa
