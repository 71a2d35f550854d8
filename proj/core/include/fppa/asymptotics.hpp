#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fppa/pa_graph.hpp"
#include "fppa/weights.hpp"

namespace fppa {

// Power-law exponent: 3 + delta/m for FPA, 1 + 1/gamma_f for VPA/GVPA.
double power_law_exponent(const ModelParams& params);
// Throws ConfigError unless tau lies in (2,3).
void require_ultrasmall_regime(double tau);

// floor(2 log log t / |log(tau - 2)|), natural logs. Requires t >= 3.
int k_star(double t, double tau);

// sum_{i=1}^{k} quantile(exp(-(tau-2)^{-i/2})); underflowed probabilities
// contribute the essential minimum.
double main_term_sum(int k, double tau, const WeightDistribution& dist);
// main_term_sum(k_star(t, tau), tau, dist).
double q_t(double t, double tau, const WeightDistribution& dist);

// (alpha t)^{1/(2(tau-1))} * log(alpha t)^{-1/2}. Requires alpha t >= 3.
double inner_core_threshold(double t, double alpha, double tau);

enum class LayerVariant { Tight, General };

struct LayerPlan {
  std::vector<double> s;         // s_0 .. s_{K_t}
  int k_t = 0;
  std::vector<double> epsilons;  // epsilon_0 .. epsilon_{K_t - 1}
  double cap = 0.0;
  LayerVariant variant = LayerVariant::Tight;
};

// Tight: epsilon_k = (k+2)^{-2}. General: epsilon_k = eps_general in (0,1).
// s_k = min(s_{k-1}^{(1 - epsilon_{k-1})/(tau-2)}, cap); K_t is the first
// index reaching the cap. Throws ConfigError if the sequence stalls below
// the cap.
LayerPlan layer_plan(double s0, double t, double alpha, double tau, LayerVariant variant,
                     std::optional<double> eps_general = std::nullopt);

// Solves log(1/(tau-2)) / log((1-e)/(tau-2)) = 1 + eps for e:
// e = 1 - (tau-2)^{eps/(1+eps)}.
double epsilon_g(double tau, double eps);

// 2 log log s / |log(tau-2)| + c_tau. Requires s > e.
double h_tau(double s, double tau, double c_tau = 0.0);

struct PredictionBundle {
  double tau = 0.0;
  double t = 0.0;
  double alpha = 0.0;
  int k_star = 0;
  std::optional<double> q_t;          // needs a weight law
  std::vector<double> main_terms;     // main_term_sum(k), k = 0..k_star
  std::optional<double> inner_threshold;
  std::optional<LayerPlan> plan;
};

struct PredictionRequest {
  ModelParams model;
  double t = 0.0;
  double alpha = 0.5;
  std::optional<WeightDistribution> dist;
  std::optional<double> s0;
  LayerVariant variant = LayerVariant::Tight;
  std::optional<double> eps_general;
};

PredictionBundle predict(const PredictionRequest& request);

}  // namespace fppa
