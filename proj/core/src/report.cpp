#include "fppa/report.hpp"

#include <cmath>

namespace fppa {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json opt(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return num(*x);
  return *x;
}

json nums(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

}  // namespace

json to_json(const TightnessReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"partial_sum", num(r.partial_sum)},
          {"tail_bound", opt(r.tail_bound)},
          {"terms", nums(r.terms)},
          {"certificate", r.certificate}};
}

json to_json(const ClassificationResult& r) {
  return {{"class", to_string(r.universality)},
          {"i_estimate", num(r.i_estimate)},
          {"tail_bound", opt(r.tail_bound)},
          {"divergence_certified", r.divergence_certified},
          {"terms", nums(r.terms)},
          {"certificate", r.certificate},
          {"tightness", to_json(r.tightness)}};
}

json to_json(const LayerPlan& p) {
  return {{"s", nums(p.s)},
          {"k_t", p.k_t},
          {"epsilons", nums(p.epsilons)},
          {"cap", num(p.cap)},
          {"variant", p.variant == LayerVariant::Tight ? "tight" : "general"}};
}

json to_json(const PredictionBundle& b) {
  json j = {{"tau", num(b.tau)},
            {"t", num(b.t)},
            {"alpha", num(b.alpha)},
            {"k_star", b.k_star},
            {"q_t", opt(b.q_t)},
            {"main_terms", nums(b.main_terms)},
            {"inner_threshold", opt(b.inner_threshold)}};
  j["layer_plan"] = b.plan ? to_json(*b.plan) : json(nullptr);
  return j;
}

json to_json(const PathResult& p) {
  return {{"weight", num(p.weight)},
          {"hops", opt(p.hops)},
          {"vertices", p.vertices},
          {"edges", p.edges},
          {"connected", p.connected()}};
}

json to_json(const GreedyStep& s) {
  return {{"connector", s.connector},
          {"vertex", s.vertex},
          {"first", s.first},
          {"second", s.second},
          {"weight", num(s.weight)}};
}

json to_json(const TraceAudit& a) {
  return {{"edges_exist", a.edges_exist},         {"weights_match", a.weights_match},
          {"age_discipline", a.age_discipline},   {"layer_membership", a.layer_membership},
          {"total_matches", a.total_matches},     {"ok", a.ok()}};
}

}  // namespace fppa
