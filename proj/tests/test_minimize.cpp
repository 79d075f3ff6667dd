// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freemoe/entropy.hpp"
#include "freemoe/sampling.hpp"

using namespace freemoe;

namespace {

std::vector<Complex> random_point(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> x(dim);
  double n = 0.0;
  for (auto& c : x) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = {re, im};
    n += std::norm(c);
  }
  for (auto& c : x) {
    c /= std::sqrt(n);
  }
  return x;
}

// Directional derivative of the objective along the real and imaginary
// axes of every coordinate, by central differences.
std::vector<Complex> finite_difference(const EntropyObjective& obj, std::vector<Complex> x,
                                       double h) {
  std::vector<Complex> out(x.size());
  for (std::size_t b = 0; b < x.size(); ++b) {
    for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
      const Complex saved = x[b];
      x[b] = saved + h * dir;
      const double up = obj.value(x);
      x[b] = saved - h * dir;
      const double down = obj.value(x);
      x[b] = saved;
      const double d = (up - down) / (2 * h);
      out[b] += dir * d;
    }
  }
  return out;
}

}  // namespace

TEST(Minimize, BallBasis) {
  const auto b0 = ball_basis(2, 1, 0);
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_TRUE(b0[0].is_identity());
  EXPECT_EQ(ball_basis(2, 1, 1).size(), 5u);
  EXPECT_EQ(ball_basis(2, 1, 2).size(), 17u);
  EXPECT_EQ(ball_basis(3, 2, 1).size(), 49u);
  EXPECT_TRUE(ball_basis(3, 2, 1).front().is_identity());
}

TEST(Minimize, ObjectiveMatchesComplementaryEntropy) {
  Rng rng(61);
  const EntropyObjective obj(3, 1, ball_basis(3, 1, 2));
  for (int i = 0; i < 10; ++i) {
    const auto x = random_point(rng, obj.dimension());
    PureState::Map m;
    for (std::size_t b = 0; b < x.size(); ++b) {
      m.emplace(obj.basis()[b], x[b]);
    }
    const PureState xi = PureState::normalized(1, m);
    EXPECT_NEAR(obj.value(x), complementary_entropy(3, 1, xi), 1e-12);
    const DensityMatrix rho = complementary_output({3, Side::left, 1}, xi);
    EXPECT_LT((obj.output_matrix(x) - rho.matrix()).norm(), 1e-13);
  }
}

TEST(Minimize, GradientMatchesFiniteDifferences) {
  Rng rng(62);
  for (const auto& [n, k, r] : {std::tuple{2u, 1u, 1u}, std::tuple{2u, 1u, 2u},
                                std::tuple{3u, 1u, 1u}, std::tuple{2u, 2u, 1u}}) {
    const EntropyObjective obj(n, k, ball_basis(n, k, r));
    for (int i = 0; i < 5; ++i) {
      const auto x = random_point(rng, obj.dimension());
      const auto g = obj.gradient(x);
      const auto fd = finite_difference(obj, x, 1e-6);
      double diff = 0.0;
      double scale = 0.0;
      for (std::size_t b = 0; b < g.size(); ++b) {
        diff += std::norm(g[b] - fd[b]);
        scale += std::norm(fd[b]);
      }
      ASSERT_LT(std::sqrt(diff / scale), 1e-5) << n << ' ' << k << ' ' << r;
    }
  }
}

TEST(Minimize, Examples) {
  OptimizerConfig cfg;
  cfg.seed = 3;
  cfg.restarts = 3;
  cfg.iterations = 100;
  const MinimizeResult r0 = minimize_entropy(2, 1, 0, cfg);
  EXPECT_NEAR(r0.entropy, std::log(2.0), 1e-12);
  EXPECT_EQ(r0.basis_size, 1u);
  EXPECT_NEAR(std::abs(r0.state.amplitude(WordTuple(1))), 1.0, 1e-12);

  for (unsigned radius : {1u, 2u}) {
    const MinimizeResult r = minimize_entropy(2, 1, radius, cfg);
    EXPECT_LE(r.entropy, std::log(2.0) + 1e-9);
    EXPECT_GE(r.entropy, hmin_lower_bound(2, 1) - 1e-9);
    EXPECT_NEAR(r.entropy, complementary_entropy(2, 1, r.state), 1e-12);
  }

  cfg.restarts = 1;
  cfg.iterations = 30;
  const MinimizeResult r32 = minimize_entropy(3, 2, 1, cfg);
  EXPECT_LE(r32.entropy, 2 * std::log(3.0) + 1e-9);
  EXPECT_GE(r32.entropy, hmin_lower_bound(3, 2) - 1e-9);
}

TEST(Minimize, DeterministicForSeed) {
  OptimizerConfig cfg;
  cfg.seed = 17;
  cfg.restarts = 2;
  cfg.iterations = 40;
  const MinimizeResult a = minimize_entropy(2, 1, 2, cfg);
  const MinimizeResult b = minimize_entropy(2, 1, 2, cfg);
  EXPECT_EQ(a.entropy, b.entropy);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.state.amplitudes(), b.state.amplitudes());
}

TEST(Minimize, ResourceLimits) {
  OptimizerConfig cfg;
  cfg.gram_cap = 100;
  EXPECT_THROW(minimize_entropy(2, 1, 4, cfg), ResourceLimitError);
  EXPECT_THROW(minimize_entropy(11, 2, 0, cfg), ResourceLimitError);
  EXPECT_NO_THROW(minimize_entropy(2, 1, 2, cfg));
  cfg.step = 0.0;
  EXPECT_THROW(minimize_entropy(2, 1, 1, cfg), std::invalid_argument);
}
