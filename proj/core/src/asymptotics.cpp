#include "fppa/asymptotics.hpp"

#include <cmath>

#include "fppa/errors.hpp"

namespace fppa {

double power_law_exponent(const ModelParams& params) {
  validate(params);
  struct Tau {
    double operator()(const FpaParams& p) const { return 3.0 + p.delta / p.m; }
    double operator()(const VpaParams& p) const { return 1.0 + 1.0 / p.gamma; }
    double operator()(const GvpaParams& p) const {
      const double g = p.rule.limit_slope();
      if (!(g > 0.0)) throw ConfigError("attachment rule has no positive limit slope");
      return 1.0 + 1.0 / g;
    }
  };
  return std::visit(Tau{}, params);
}

void require_ultrasmall_regime(double tau) {
  if (!(tau > 2.0 && tau < 3.0)) {
    throw ConfigError("power-law exponent " + std::to_string(tau) + " is outside (2,3)");
  }
}

namespace {

void check_tau(double tau) {
  if (!(tau > 2.0 && tau < 3.0)) throw DomainError("tau must lie in (2,3)");
}

}  // namespace

int k_star(double t, double tau) {
  check_tau(tau);
  if (!(t >= 3.0)) throw DomainError("k_star requires t >= 3");
  return static_cast<int>(std::floor(2.0 * std::log(std::log(t)) / std::fabs(std::log(tau - 2.0))));
}

double main_term_sum(int k, double tau, const WeightDistribution& dist) {
  check_tau(tau);
  if (k < 0) throw DomainError("main_term_sum requires k >= 0");
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double y = std::exp(-std::pow(tau - 2.0, -0.5 * i));
    sum += dist.quantile_limit(y);
  }
  return sum;
}

double q_t(double t, double tau, const WeightDistribution& dist) {
  return main_term_sum(k_star(t, tau), tau, dist);
}

double inner_core_threshold(double t, double alpha, double tau) {
  check_tau(tau);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double x = alpha * t;
  if (!(x >= 3.0)) throw DomainError("inner_core_threshold requires alpha*t >= 3");
  return std::pow(x, 1.0 / (2.0 * (tau - 1.0))) / std::sqrt(std::log(x));
}

LayerPlan layer_plan(double s0, double t, double alpha, double tau, LayerVariant variant,
                     std::optional<double> eps_general) {
  if (!(s0 > 1.0)) throw DomainError("layer_plan requires s0 > 1");
  if (variant == LayerVariant::General) {
    if (!eps_general || !(*eps_general > 0.0 && *eps_general < 1.0)) {
      throw ConfigError("general layer plan needs eps_general in (0,1)");
    }
  }
  LayerPlan plan;
  plan.variant = variant;
  plan.cap = inner_core_threshold(t, alpha, tau);
  plan.s.push_back(std::min(s0, plan.cap));
  auto epsilon = [&](int k) {
    return variant == LayerVariant::Tight ? 1.0 / ((k + 2.0) * (k + 2.0)) : *eps_general;
  };
  constexpr int kMaxSteps = 10000;
  while (plan.s.back() < plan.cap) {
    const int k = static_cast<int>(plan.s.size());
    if (k > kMaxSteps) throw ConfigError("layer recursion did not reach the cap");
    const double eps = epsilon(k - 1);
    const double prev = plan.s.back();
    const double next = std::min(std::pow(prev, (1.0 - eps) / (tau - 2.0)), plan.cap);
    if (!(next > prev)) {
      throw ConfigError("layer recursion stalls: s0 too small for exponent (1-eps)/(tau-2)");
    }
    plan.epsilons.push_back(eps);
    plan.s.push_back(next);
  }
  plan.k_t = static_cast<int>(plan.s.size()) - 1;
  return plan;
}

double epsilon_g(double tau, double eps) {
  check_tau(tau);
  if (!(eps > 0.0)) throw DomainError("epsilon_g requires eps > 0");
  return 1.0 - std::pow(tau - 2.0, eps / (1.0 + eps));
}

double h_tau(double s, double tau, double c_tau) {
  check_tau(tau);
  if (!(s > std::exp(1.0))) throw DomainError("h_tau requires s > e");
  return 2.0 * std::log(std::log(s)) / std::fabs(std::log(tau - 2.0)) + c_tau;
}

PredictionBundle predict(const PredictionRequest& request) {
  PredictionBundle b;
  b.tau = power_law_exponent(request.model);
  require_ultrasmall_regime(b.tau);
  b.t = request.t;
  b.alpha = request.alpha;
  b.k_star = k_star(request.t, b.tau);
  if (request.dist) {
    b.main_terms.push_back(0.0);
    for (int k = 1; k <= b.k_star; ++k) {
      b.main_terms.push_back(main_term_sum(k, b.tau, *request.dist));
    }
    b.q_t = b.main_terms.back();
  }
  if (request.alpha * request.t >= 3.0) {
    b.inner_threshold = inner_core_threshold(request.t, request.alpha, b.tau);
    if (request.s0) {
      b.plan = layer_plan(*request.s0, request.t, request.alpha, b.tau, request.variant,
                          request.eps_general);
    }
  }
  return b;
}

}  // namespace fppa
