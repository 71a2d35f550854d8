#include "fppa/weights.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <sstream>

#include "fppa/errors.hpp"

namespace fppa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ConfigError(std::string(what) + " must be finite and non-negative");
  }
}

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ConfigError(std::string(what) + " must be finite and positive");
  }
}

}  // namespace

WeightDistribution WeightDistribution::constant(double value) {
  require_finite_nonnegative(value, "constant weight");
  return WeightDistribution(ConstantLaw{value});
}

WeightDistribution WeightDistribution::uniform(double low, double high) {
  require_finite_nonnegative(low, "uniform low");
  require_finite_nonnegative(high, "uniform high");
  if (!(high > low)) throw ConfigError("uniform requires low < high");
  return WeightDistribution(UniformLaw{low, high});
}

WeightDistribution WeightDistribution::exponential(double rate) {
  require_positive(rate, "exponential rate");
  return WeightDistribution(ExponentialLaw{rate});
}

WeightDistribution WeightDistribution::weibull(double shape, double scale) {
  require_positive(shape, "weibull shape");
  require_positive(scale, "weibull scale");
  return WeightDistribution(WeibullLaw{shape, scale});
}

WeightDistribution WeightDistribution::shifted(WeightDistribution base, double shift) {
  require_finite_nonnegative(shift, "shift");
  return WeightDistribution(
      ShiftedLaw{std::make_shared<const WeightDistribution>(std::move(base)), shift});
}

WeightDistribution WeightDistribution::quantile_table(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw ConfigError("quantile_table needs at least one point");
  double prev_p = 0.0;
  double prev_x = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [p, x] = points[i];
    if (!(p > prev_p) || p > 1.0) {
      throw ConfigError("quantile_table probabilities must increase strictly within (0,1]");
    }
    require_finite_nonnegative(x, "quantile_table abscissa");
    if (i > 0 && x < prev_x) throw ConfigError("quantile_table abscissae must be nondecreasing");
    prev_p = p;
    prev_x = x;
  }
  if (points.back().first != 1.0) throw ConfigError("quantile_table must end at p = 1");
  return WeightDistribution(QuantileTableLaw{std::move(points)});
}

double WeightDistribution::quantile(double y) const {
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("quantile: probability must lie in (0,1]");
  double x = std::visit(
      Overloaded{
          [](const ConstantLaw& c) { return c.value; },
          [y](const UniformLaw& u) { return u.low + y * (u.high - u.low); },
          [y](const ExponentialLaw& e) { return -std::log1p(-y) / e.rate; },
          [y](const WeibullLaw& w) { return w.scale * std::pow(-std::log1p(-y), 1.0 / w.shape); },
          [y](const ShiftedLaw& s) { return s.base->quantile(y) + s.shift; },
          [y](const QuantileTableLaw& t) {
            // min{x_i : p_i >= y}; the last p is 1 so this always exists.
            auto it = std::lower_bound(t.points.begin(), t.points.end(), y,
                                       [](const auto& pt, double v) { return pt.first < v; });
            return it->second;
          },
      },
      family_);
  const bool continuous = std::holds_alternative<UniformLaw>(family_) || std::holds_alternative<ExponentialLaw>(family_) ||
                          std::holds_alternative<WeibullLaw>(family_) || std::holds_alternative<ShiftedLaw>(family_);
  if (!continuous || !std::isfinite(x)) return x;
  // The closed forms can land an ulp or two off, and a shift or offset can
  // swallow a tiny quantile altogether. Snap to the leftmost double with
  // cdf(x) >= y; non-negative doubles order like their bit patterns.
  const auto reaches = [&](double v) { return cdf(v) >= y; };
  for (int i = 0; i < 4 && !reaches(x); ++i) x = std::nextafter(x, kInf);
  if (!reaches(x)) x = kInf;
  if (x <= 0.0 || !reaches(std::nextafter(x, -kInf))) return x;
  if (reaches(0.0)) return 0.0;
  std::uint64_t lo = 0, hi = std::bit_cast<std::uint64_t>(x);  // cdf < y at lo, >= y at hi
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (reaches(std::bit_cast<double>(mid)) ? hi : lo) = mid;
  }
  return std::bit_cast<double>(hi);
}

double WeightDistribution::quantile_limit(double y) const {
  return y > 0.0 ? quantile(y) : essential_minimum();
}

double WeightDistribution::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  if (x < 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [x](const ConstantLaw& c) { return x >= c.value ? 1.0 : 0.0; },
          [x](const UniformLaw& u) {
            if (x <= u.low) return 0.0;
            if (x >= u.high) return 1.0;
            return (x - u.low) / (u.high - u.low);
          },
          [x](const ExponentialLaw& e) { return -std::expm1(-e.rate * x); },
          [x](const WeibullLaw& w) { return -std::expm1(-std::pow(x / w.scale, w.shape)); },
          [x](const ShiftedLaw& s) { return x < s.shift ? 0.0 : s.base->cdf(x - s.shift); },
          [x](const QuantileTableLaw& t) {
            // max{p_i : x_i <= x}
            auto it = std::upper_bound(t.points.begin(), t.points.end(), x,
                                       [](double v, const auto& pt) { return v < pt.second; });
            return it == t.points.begin() ? 0.0 : std::prev(it)->first;
          },
      },
      family_);
}

double WeightDistribution::sample(Rng& rng) const { return quantile(rng.uniform()); }

double WeightDistribution::essential_minimum() const {
  return std::visit(Overloaded{
                        [](const ConstantLaw& c) { return c.value; },
                        [](const UniformLaw& u) { return u.low; },
                        [](const ExponentialLaw&) { return 0.0; },
                        [](const WeibullLaw&) { return 0.0; },
                        [](const ShiftedLaw& s) { return s.base->essential_minimum() + s.shift; },
                        [](const QuantileTableLaw& t) { return t.points.front().second; },
                    },
                    family_);
}

std::optional<NearZeroEnvelope> WeightDistribution::excess_envelope() const {
  return std::visit(
      Overloaded{
          [](const ConstantLaw&) -> std::optional<NearZeroEnvelope> {
            return NearZeroEnvelope{0.0, 1.0, 1.0};
          },
          [](const UniformLaw& u) -> std::optional<NearZeroEnvelope> {
            return NearZeroEnvelope{u.high - u.low, 1.0, 1.0};
          },
          [](const ExponentialLaw& e) -> std::optional<NearZeroEnvelope> {
            // -log(1-y) <= y/(1-y) <= 2y on (0, 1/2]
            return NearZeroEnvelope{2.0 / e.rate, 1.0, 0.5};
          },
          [](const WeibullLaw& w) -> std::optional<NearZeroEnvelope> {
            return NearZeroEnvelope{w.scale * std::pow(2.0, 1.0 / w.shape), 1.0 / w.shape, 0.5};
          },
          [](const ShiftedLaw& s) { return s.base->excess_envelope(); },
          [](const QuantileTableLaw&) -> std::optional<NearZeroEnvelope> { return std::nullopt; },
      },
      family_);
}

std::string WeightDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const ConstantLaw& c) { os << "constant(" << c.value << ")"; },
                 [&](const UniformLaw& u) { os << "uniform(" << u.low << "," << u.high << ")"; },
                 [&](const ExponentialLaw& e) { os << "exponential(" << e.rate << ")"; },
                 [&](const WeibullLaw& w) { os << "weibull(" << w.shape << "," << w.scale << ")"; },
                 [&](const ShiftedLaw& s) {
                   os << "shifted(" << s.base->describe() << "," << s.shift << ")";
                 },
                 [&](const QuantileTableLaw& t) {
                   os << "quantile_table(" << t.points.size() << " points)";
                 },
             },
             family_);
  return os.str();
}

std::string to_string(UniversalityClass c) {
  switch (c) {
    case UniversalityClass::Explosive: return "Explosive";
    case UniversalityClass::Conservative: return "Conservative";
    case UniversalityClass::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string to_string(Tightness t) {
  switch (t) {
    case Tightness::Holds: return "Holds";
    case Tightness::Fails: return "Fails";
    case Tightness::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

double doubly_exponential_level(int k) { return std::exp(-std::exp(static_cast<double>(k))); }

namespace {

// Bound on sum_{k > k_max} C e^{-theta e^k}, or nullopt if the envelope does
// not cover the tail probabilities.
std::optional<double> geometric_tail_bound(const NearZeroEnvelope& env, int k_max) {
  if (env.scale == 0.0) return 0.0;
  if (doubly_exponential_level(k_max + 1) > env.y_max) return std::nullopt;
  const double x = env.exponent * std::exp(static_cast<double>(k_max + 1));
  const double ratio = std::exp(-x * (std::exp(1.0) - 1.0));
  return env.scale * std::exp(-x) / (1.0 - ratio);
}

void require_k_max(int k_max, double tol) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

}  // namespace

TightnessReport tightness_condition(const WeightDistribution& dist, int k_max, double tol) {
  require_k_max(k_max, tol);
  TightnessReport report;
  const double a = dist.essential_minimum();
  report.terms.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double term = (dist.quantile_limit(doubly_exponential_level(k)) - a) / k;
    report.terms.push_back(term);
    report.partial_sum += term;
  }
  if (const auto env = dist.excess_envelope()) {
    report.tail_bound = geometric_tail_bound(*env, k_max);
    if (report.tail_bound && *report.tail_bound < tol) {
      report.verdict = Tightness::Holds;
      report.certificate = "excess envelope C*y^theta certifies the tail below tol";
      return report;
    }
    report.certificate = "tail bound not below tol; increase k_max";
    return report;
  }
  report.certificate = "no near-zero envelope; partial sums only";
  return report;
}

ClassificationResult explosion_characteristic(const WeightDistribution& dist, int k_max,
                                              double tol) {
  require_k_max(k_max, tol);
  ClassificationResult result;
  const double a = dist.essential_minimum();
  result.terms.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double term = dist.quantile_limit(doubly_exponential_level(k));
    result.terms.push_back(term);
    result.i_estimate += term;
  }
  result.tightness = tightness_condition(dist, k_max, tol);

  if (a > 0.0) {
    result.universality = UniversalityClass::Conservative;
    result.divergence_certified = true;
    result.certificate = "essential minimum a > 0: every term >= a, partial sums >= k*a";
    return result;
  }
  const auto env = dist.excess_envelope();
  if (!env) {
    result.certificate = "no near-zero envelope for this family; convergence not certifiable";
    return result;
  }
  result.tail_bound = geometric_tail_bound(*env, k_max);
  if (result.tail_bound && *result.tail_bound < tol) {
    result.universality = UniversalityClass::Explosive;
    result.certificate = "quantile(y) <= C*y^theta near 0; geometric tail bound below tol";
  } else {
    result.certificate = "tail bound not below tol; increase k_max";
  }
  return result;
}

}  // namespace fppa
