#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fppa/rng.hpp"

namespace fppa {

class WeightDistribution;

struct ConstantLaw {
  double value;
};
struct UniformLaw {
  double low;
  double high;
};
struct ExponentialLaw {
  double rate;
};
struct WeibullLaw {
  double shape;
  double scale;
};
struct ShiftedLaw {
  std::shared_ptr<const WeightDistribution> base;
  double shift;
};
// Step distribution: F(x) = max{p_i : x_i <= x}. Points are sorted with
// strictly increasing p in (0,1], nondecreasing x >= 0, and the last p == 1.
struct QuantileTableLaw {
  std::vector<std::pair<double, double>> points;
};

// Bound on the quantile excess near zero: quantile(y) - a <= scale * y^exponent
// for every y in (0, y_max]. Used to certify convergent tails.
struct NearZeroEnvelope {
  double scale;
  double exponent;
  double y_max;
};

// Edge-weight law L on [0, inf). Immutable value type; copies share the base
// of shifted laws.
class WeightDistribution {
 public:
  using Family = std::variant<ConstantLaw, UniformLaw, ExponentialLaw, WeibullLaw, ShiftedLaw,
                              QuantileTableLaw>;

  static WeightDistribution constant(double value);
  static WeightDistribution uniform(double low, double high);
  static WeightDistribution exponential(double rate);
  static WeightDistribution weibull(double shape, double scale);
  static WeightDistribution shifted(WeightDistribution base, double shift);
  static WeightDistribution quantile_table(std::vector<std::pair<double, double>> points);

  // Generalized inverse inf{x : F(x) >= y}. Throws DomainError unless y in (0,1].
  double quantile(double y) const;
  // quantile(y) for y > 0 and its right limit at 0 (the essential minimum)
  // for y == 0, which is what an underflowed probability means.
  double quantile_limit(double y) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;
  // a = sup{x : F(x) = 0}.
  double essential_minimum() const;
  // Documented near-zero envelope of quantile(y) - a, if the family has one.
  // Tabulated laws never do: finite data cannot certify a tail.
  std::optional<NearZeroEnvelope> excess_envelope() const;

  const Family& family() const { return family_; }
  std::string describe() const;

 private:
  explicit WeightDistribution(Family family) : family_(std::move(family)) {}
  Family family_;
};

enum class UniversalityClass { Explosive, Conservative, Undetermined };
enum class Tightness { Holds, Fails, Undetermined };

std::string to_string(UniversalityClass c);
std::string to_string(Tightness t);

struct TightnessReport {
  Tightness verdict = Tightness::Undetermined;
  double partial_sum = 0.0;
  std::optional<double> tail_bound;
  std::vector<double> terms;  // (1/k)(quantile(e^{-e^k}) - a), k = 1..k_max
  std::string certificate;
};

struct ClassificationResult {
  UniversalityClass universality = UniversalityClass::Undetermined;
  double i_estimate = 0.0;               // sum_{k <= k_max} quantile(e^{-e^k})
  std::optional<double> tail_bound;      // certified bound on the neglected terms
  bool divergence_certified = false;
  std::vector<double> terms;
  std::string certificate;
  TightnessReport tightness;
};

inline constexpr int kDefaultKMax = 64;
inline constexpr double kDefaultTolerance = 1e-12;

// e^{-e^k}; returns 0 once the value underflows (k >= 7 in binary64).
double doubly_exponential_level(int k);

// Classifies L into the explosive or conservative class via the explosion
// characteristic sum_k quantile(e^{-e^k}).
//
// Conservative: certified when a = essential_minimum > 0. Terms are
// nonincreasing in k with limit a, so every term is >= a and the series
// diverges.
//
// Explosive: certified when a == 0, the family has an envelope
// quantile(y) <= C y^theta on (0, y_max], and the tail bound
//   sum_{k>K} C e^{-theta e^k} <= C e^{-x} / (1 - e^{-x(e-1)}),  x = theta e^{K+1}
// (consecutive ratio of the dominating terms is at most e^{-x(e-1)}) is below tol.
// Envelopes: uniform(0,h): C = h, theta = 1. exponential(r): -log(1-y) <= 2y
// for y <= 1/2, so C = 2/r, theta = 1. weibull(k, s): C = s 2^{1/k},
// theta = 1/k. constant(0): C = 0. shifted(base, 0) inherits base.
//
// Anything else is Undetermined. Probabilities that underflow contribute the
// right limit quantile(0+) = a.
ClassificationResult explosion_characteristic(const WeightDistribution& dist,
                                              int k_max = kDefaultKMax,
                                              double tol = kDefaultTolerance);

// Evaluates sum_k (1/k)(quantile(e^{-e^k}) - a). Holds when the excess
// envelope certifies a tail below tol (the 1/k factor only helps). No
// built-in family admits a divergence certificate, so Fails is never
// returned by the current families; tabulated laws are Undetermined.
TightnessReport tightness_condition(const WeightDistribution& dist, int k_max = kDefaultKMax,
                                    double tol = kDefaultTolerance);

}  // namespace fppa
