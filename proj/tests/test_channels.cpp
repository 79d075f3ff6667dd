// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freemoe/channels.hpp"
#include "freemoe/entropy.hpp"
#include "freemoe/sampling.hpp"
#include "freemoe/serialize.hpp"
#include "oracles.hpp"

using namespace freemoe;

namespace {

PureState delta1(const char* w) { return PureState::delta(WordTuple{parse_word(w)}); }

oracle::SparseFn to_oracle(const PureState& xi) {
  oracle::SparseFn out;
  for (const auto& [key, c] : xi.amplitudes()) {
    out[oracle::letters_of(key)] += c;
  }
  return out;
}

void expect_spectrum(std::vector<double> got, std::vector<double> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
  }
}

}  // namespace

TEST(Channels, ApplyUnitaryExamples) {
  const std::vector<unsigned> one{1};
  const PureState e = delta1("e");
  const PureState l = apply_unitary({2, Side::left, 1}, one, e);
  EXPECT_EQ(l.amplitude(WordTuple{parse_word("g1")}), Complex(1.0));
  const PureState r = apply_unitary({2, Side::right, 1}, one, e);
  EXPECT_EQ(r.amplitude(WordTuple{parse_word("g1^-1")}), Complex(1.0));
  EXPECT_THROW(apply_unitary({2, Side::left, 1}, std::vector<unsigned>{3}, e), std::out_of_range);
  EXPECT_THROW(apply_unitary({2, Side::left, 1}, std::vector<unsigned>{0}, e), std::out_of_range);
  EXPECT_THROW(apply_unitary({2, Side::left, 2}, one, e), std::invalid_argument);
}

TEST(Channels, LeftAndRightCommute) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const unsigned k = 1 + i % 2;
    const PureState xi = random_state(rng, k, 10, 3, 3);
    std::vector<unsigned> a(k), b(k);
    for (unsigned j = 0; j < k; ++j) {
      a[j] = 1 + rng() % 3;
      b[j] = 1 + rng() % 3;
    }
    const ChannelSpec left{3, Side::left, k};
    const ChannelSpec right{3, Side::right, k};
    const PureState uv = apply_unitary(left, a, apply_unitary(right, b, xi));
    const PureState vu = apply_unitary(right, b, apply_unitary(left, a, xi));
    ASSERT_EQ(uv.amplitudes(), vu.amplitudes());
    ASSERT_NEAR(uv.norm(), 1.0, 1e-12);
  }
}

TEST(Channels, ComplementaryOutputExamples) {
  const DensityMatrix a = complementary_output({2, Side::left, 1}, delta1("e"));
  EXPECT_TRUE(a.matrix().isApprox(Eigen::MatrixXcd::Identity(2, 2) * 0.5, 1e-15));

  PureState::Map m;
  m.emplace(WordTuple(1), 1.0 / std::sqrt(2.0));
  m.emplace(WordTuple{parse_word("g1^-1*g2")}, 1.0 / std::sqrt(2.0));
  const DensityMatrix b = complementary_output({2, Side::left, 1}, PureState(1, m));
  Eigen::MatrixXcd want(2, 2);
  want << 0.5, 0.25, 0.25, 0.5;
  EXPECT_LT((b.matrix() - want).norm(), 1e-15);
  expect_spectrum(b.eigenvalues(), {0.75, 0.25}, 1e-15);

  const DensityMatrix c = complementary_output({3, Side::left, 1}, delta1("g1"));
  EXPECT_LT((c.matrix() - Eigen::MatrixXcd::Identity(3, 3) / 3.0).norm(), 1e-15);
}

TEST(Channels, ComplementaryOutputMatchesBruteForce) {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const unsigned n = 2 + i % 3;
    const unsigned k = 1 + (i / 3) % 2;
    const PureState xi = random_state(rng, k, 15, 3, n + 1);
    const DensityMatrix rho = complementary_output({n, Side::left, k}, xi);
    const Eigen::MatrixXcd ref = oracle::complementary_output(n, k, to_oracle(xi));
    ASSERT_LT((rho.matrix() - ref).norm(), 1e-13);
    ASSERT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(Channels, DirectSpectrumExamples) {
  const std::vector<ChannelSpec> both{{2, Side::left, 1}, {2, Side::right, 1}};
  expect_spectrum(direct_output_spectrum(both, delta1("e")), {0.5, 0.25, 0.25}, 1e-14);
  const std::vector<ChannelSpec> single{{2, Side::left, 1}};
  expect_spectrum(direct_output_spectrum(single, delta1("e")), {0.5, 0.5}, 1e-14);
  for (unsigned n : {3u, 4u}) {
    const std::vector<ChannelSpec> chain{{n, Side::left, 1}, {n, Side::right, 1}};
    std::vector<double> want{1.0 / n};
    want.resize(1 + n * n - n, 1.0 / (n * n));
    expect_spectrum(direct_output_spectrum(chain, delta1("e")), want, 1e-12);
  }
}

TEST(Channels, DirectSpectrumErrors) {
  const std::vector<ChannelSpec> big{{4, Side::left, 2}, {4, Side::right, 2}};
  const PureState e2 = PureState::delta(WordTuple(2));
  EXPECT_THROW(direct_output_spectrum(big, e2, 200), ResourceLimitError);
  EXPECT_NO_THROW(direct_output_spectrum(big, e2, 256));
  const std::vector<ChannelSpec> mismatch{{2, Side::left, 1}, {2, Side::right, 2}};
  EXPECT_THROW(direct_output_spectrum(mismatch, delta1("e")), std::invalid_argument);
  const std::vector<ChannelSpec> none;
  EXPECT_THROW(direct_output_spectrum(none, delta1("e")), std::invalid_argument);
  EXPECT_THROW(complementary_output({5, Side::left, 6}, PureState::delta(WordTuple(6))),
               ResourceLimitError);
}

TEST(Channels, SchmidtDualityProperty) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const unsigned n = 2 + i % 3;
    const unsigned k = 1 + (i / 3) % 2;
    const PureState xi = random_state(rng, k, 20, 3, n);
    const ChannelSpec left{n, Side::left, k};
    const std::vector<ChannelSpec> chain{left};
    const auto direct = direct_output_spectrum(chain, xi);
    const auto comp = nonzero_spectrum(complementary_output(left, xi));
    ASSERT_LT(spectral_mismatch(direct, comp), 1e-9);
    double total = 0.0;
    for (double v : direct) {
      total += v;
    }
    ASSERT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(Channels, JConjugation) {
  EXPECT_EQ(j_conjugate(delta1("g1")).amplitudes(), delta1("g1^-1").amplitudes());
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const unsigned n = 2 + i % 3;
    const unsigned k = 1 + i % 2;
    const PureState xi = random_state(rng, k, 12, 3, n);
    ASSERT_EQ(j_conjugate(j_conjugate(xi)).amplitudes(), xi.amplitudes());
    ASSERT_NEAR(j_conjugate(xi).norm(), 1.0, 1e-12);
    const std::vector<ChannelSpec> right{{n, Side::right, k}};
    const std::vector<ChannelSpec> left{{n, Side::left, k}};
    ASSERT_LT(spectral_mismatch(direct_output_spectrum(right, xi),
                                direct_output_spectrum(left, j_conjugate(xi))),
              1e-9);
  }
}

TEST(Channels, CompositionOrderDoesNotMatter) {
  Rng rng(45);
  for (int i = 0; i < 60; ++i) {
    const unsigned n = 2 + i % 2;
    const PureState xi = random_state(rng, 1, 10, 3, n);
    const std::vector<ChannelSpec> lr{{n, Side::left, 1}, {n, Side::right, 1}};
    const std::vector<ChannelSpec> rl{{n, Side::right, 1}, {n, Side::left, 1}};
    ASSERT_LT(spectral_mismatch(direct_output_spectrum(lr, xi), direct_output_spectrum(rl, xi)),
              1e-10);
  }
}

TEST(Channels, ValidationErrors) {
  PureState::Map m;
  m.emplace(WordTuple(1), 0.9);
  EXPECT_THROW(PureState(1, m), std::invalid_argument);
  EXPECT_THROW(PureState::normalized(1, {}), std::invalid_argument);
  EXPECT_THROW((ChannelSpec{1, Side::left, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((ChannelSpec{2, Side::left, 0}.validate()), std::invalid_argument);

  Eigen::MatrixXcd not_unit = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{not_unit}, std::invalid_argument);
  Eigen::MatrixXcd negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, std::invalid_argument);
  Eigen::MatrixXcd skew(2, 2);
  skew << 0.5, 0.1, -0.1, 0.5;
  EXPECT_THROW(DensityMatrix{skew}, std::invalid_argument);
}

TEST(Channels, SpectrumJsonIsDescending) {
  const DensityMatrix rho = complementary_output({3, Side::left, 1}, delta1("g1*g2"));
  const Json j = to_json(rho);
  EXPECT_EQ(j["dimension"], 3);
  const auto spec = j["spectrum"].get<std::vector<double>>();
  EXPECT_TRUE(std::is_sorted(spec.begin(), spec.end(), std::greater<>()));
  EXPECT_EQ(spectrum_to_json({0.1, 0.7, 0.2}), Json({0.7, 0.2, 0.1}));
}
