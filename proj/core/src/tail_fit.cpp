#include "fppa/tail_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fppa/errors.hpp"
#include "fppa/rng.hpp"

namespace fppa {

namespace {

struct HillPoint {
  double tau;
  double cutoff;
};

// Partially reorders `values` so the n_top largest come first.
HillPoint hill(std::vector<double>& values, std::size_t n_top) {
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n_top), values.end(),
                   std::greater<>());
  const double cutoff = values[n_top];
  if (!(cutoff > 0.0)) throw InsufficientDataError("tail cutoff must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_top; ++i) sum += std::log(values[i] / cutoff);
  if (!(sum > 0.0)) throw InsufficientDataError("no variation above the tail cutoff");
  return {1.0 + static_cast<double>(n_top) / sum, cutoff};
}

}  // namespace

TailFit fit_tail_exponent(std::span<const double> samples, double top_fraction,
                          std::uint64_t bootstrap_seed) {
  if (!(top_fraction > 0.0 && top_fraction < 1.0)) {
    throw DomainError("top_fraction must lie in (0,1)");
  }
  const auto n_top = static_cast<std::size_t>(std::floor(top_fraction * samples.size()));
  if (n_top < kMinTailSamples || n_top >= samples.size()) {
    throw InsufficientDataError("only " + std::to_string(n_top) +
                                " observations in the tail; need at least " +
                                std::to_string(kMinTailSamples) + " (use a larger graph)");
  }
  std::vector<double> values(samples.begin(), samples.end());
  const HillPoint point = hill(values, n_top);

  TailFit fit{point.tau, 0.0, n_top, point.cutoff};
  Rng rng(bootstrap_seed);
  std::vector<double> resample(values.size());
  double mean = 0.0;
  double sq = 0.0;
  int used = 0;
  for (int b = 0; b < kBootstrapResamples; ++b) {
    for (auto& x : resample) x = values[rng.below(values.size())];
    try {
      const double tau = hill(resample, n_top).tau;
      mean += tau;
      sq += tau * tau;
      ++used;
    } catch (const InsufficientDataError&) {
      // degenerate resample; skipped
    }
  }
  if (used > 1) {
    mean /= used;
    fit.std_error = std::sqrt(std::max(0.0, (sq - used * mean * mean) / (used - 1)));
  }
  return fit;
}

TailFit fit_tail_exponent(std::span<const std::uint32_t> degrees, double top_fraction,
                          std::uint64_t bootstrap_seed) {
  std::vector<double> values(degrees.begin(), degrees.end());
  return fit_tail_exponent(values, top_fraction, bootstrap_seed);
}

}  // namespace fppa
