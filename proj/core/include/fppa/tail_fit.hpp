#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fppa {

struct TailFit {
  double tau_hat = 0.0;
  double std_error = 0.0;  // bootstrap standard error
  std::size_t n_top = 0;
  double cutoff = 0.0;     // the (n_top+1)-th largest observation
};

inline constexpr double kDefaultTopFraction = 0.05;
inline constexpr int kBootstrapResamples = 200;
inline constexpr std::size_t kMinTailSamples = 100;

// Hill estimator of the density exponent tau (P(D = k) ~ k^{-tau}) from the
// top_fraction largest observations:
//   tau_hat = 1 + n_top / sum_{i <= n_top} log(d_(i) / d_(n_top+1)).
// Throws InsufficientDataError when fewer than 100 observations lie above the
// cutoff or the tail shows no variation.
TailFit fit_tail_exponent(std::span<const double> samples, double top_fraction = kDefaultTopFraction,
                          std::uint64_t bootstrap_seed = 0x7a11);

TailFit fit_tail_exponent(std::span<const std::uint32_t> degrees,
                          double top_fraction = kDefaultTopFraction,
                          std::uint64_t bootstrap_seed = 0x7a11);

}  // namespace fppa
