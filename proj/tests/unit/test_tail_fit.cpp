#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fppa/errors.hpp"
#include "fppa/pa_graph.hpp"
#include "fppa/rng.hpp"
#include "fppa/tail_fit.hpp"

using namespace fppa;

namespace {

// density ~ x^{-tau} on [1, inf)
std::vector<double> pareto(double tau, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = std::pow(rng.uniform(), -1.0 / (tau - 1.0));
  return out;
}

}  // namespace

TEST(TailFit, ParetoControl) {
  for (double tau : {2.2, 2.5, 3.0}) {
    const auto xs = pareto(tau, 100000, 17);
    const auto fit = fit_tail_exponent(xs);
    EXPECT_NEAR(fit.tau_hat, tau, 0.1) << tau;
    EXPECT_EQ(fit.n_top, 5000u);
    EXPECT_GT(fit.std_error, 0.0);
    EXPECT_LT(fit.std_error, 0.1);
  }
}

TEST(TailFit, HandComputed) {
  // 2000 samples: 100 at e, the rest at 1 -> cutoff 1, sum of logs = 100
  std::vector<double> xs(2000, 1.0);
  for (int i = 0; i < 100; ++i) xs[i] = std::exp(1.0);
  const auto fit = fit_tail_exponent(xs, 0.05);
  EXPECT_EQ(fit.n_top, 100u);
  EXPECT_DOUBLE_EQ(fit.cutoff, 1.0);
  EXPECT_DOUBLE_EQ(fit.tau_hat, 2.0);
}

TEST(TailFit, TooFewOrFlat) {
  const std::vector<double> small(500, 2.0);
  EXPECT_THROW(fit_tail_exponent(small), InsufficientDataError);
  const std::vector<std::uint32_t> flat(100000, 3);
  EXPECT_THROW(fit_tail_exponent(flat), InsufficientDataError);
  const auto xs = pareto(2.5, 1000, 1);
  EXPECT_THROW(fit_tail_exponent(xs, 0.0), DomainError);
  EXPECT_THROW(fit_tail_exponent(xs, 1.0), DomainError);
}

TEST(TailFit, Deterministic) {
  const auto xs = pareto(2.5, 20000, 5);
  const auto a = fit_tail_exponent(xs, 0.05, 9);
  const auto b = fit_tail_exponent(xs, 0.05, 9);
  EXPECT_EQ(a.tau_hat, b.tau_hat);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(TailFit, GrownDegrees) {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_fpa({1, -0.5}, 200000, seed);
    const auto deg = degrees_at(g, g.size());
    const std::vector<std::uint32_t> observed(deg.begin() + 1, deg.end());
    sum += fit_tail_exponent(observed).tau_hat;
  }
  EXPECT_NEAR(sum / 5.0, 2.5, 0.35);
}
