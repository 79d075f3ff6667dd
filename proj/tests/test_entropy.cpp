// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "freemoe/entropy.hpp"
#include "freemoe/sampling.hpp"
#include "freemoe/serialize.hpp"

using namespace freemoe;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

PureState two_term_state() {
  PureState::Map m;
  m.emplace(WordTuple(1), 1.0 / std::sqrt(2.0));
  m.emplace(WordTuple{parse_word("g1^-1*g2")}, 1.0 / std::sqrt(2.0));
  return PureState(1, m);
}

}  // namespace

TEST(Entropy, SpectrumFunctionals) {
  EXPECT_EQ(von_neumann_entropy(std::vector<double>{1.0}), 0.0);
  for (int d : {2, 5, 17}) {
    const std::vector<double> u(d, 1.0 / d);
    EXPECT_NEAR(von_neumann_entropy(u), std::log(d), 1e-14);
    EXPECT_NEAR(renyi_entropy(u, 2.0), std::log(d), 1e-14);
  }
  EXPECT_NEAR(von_neumann_entropy(std::vector<double>{0.5, 0.25, 0.25}), 1.039720770839917964,
              1e-15);
  EXPECT_NEAR(von_neumann_entropy(std::vector<double>{1.0 + 5e-11, -5e-11}), 0.0, 1e-10);
  EXPECT_THROW(von_neumann_entropy(std::vector<double>{1.1, -0.1}), std::invalid_argument);
  EXPECT_THROW(von_neumann_entropy(std::vector<double>{0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(renyi_entropy(std::vector<double>{1.0}, 1.0), std::invalid_argument);
}

TEST(Entropy, VonNeumannDominatesRenyi) {
  Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = 2 + i % 3;
    const unsigned k = 1 + (i / 3) % 2;
    const auto ev = complementary_output({n, Side::left, k}, random_state(rng, k, 10, 3, n))
                        .eigenvalues();
    ASSERT_GE(von_neumann_entropy(ev), renyi_entropy(ev, 2.0) - 1e-12);
  }
}

TEST(Entropy, HsCheckExamples) {
  const HsCheck a = hs_distance_check(2, 1, PureState::delta(WordTuple(1)));
  EXPECT_NEAR(a.distance, 0.0, 1e-15);
  EXPECT_NEAR(a.bound, 1.5, 1e-15);
  EXPECT_TRUE(a.pass);
  const HsCheck b = hs_distance_check(2, 1, two_term_state());
  EXPECT_NEAR(b.distance, 0.3535533905932737622, 1e-15);
  EXPECT_TRUE(b.pass);
}

TEST(Entropy, HsBoundHoldsOnRandomStates) {
  for (unsigned n : {2u, 3u, 4u}) {
    for (unsigned k : {1u, 2u}) {
      Rng rng(derive_seed(52, n * 10 + k));
      BoundReport report = BoundReport::for_parameters(n, k, 52);
      for (int i = 0; i < 100; ++i) {
        const PureState xi = random_state(rng, k, 20, 3, n);
        report.add_sample(xi, "sample " + std::to_string(i));
        ASSERT_TRUE(hs_distance_check(n, k, xi).pass);
      }
      EXPECT_TRUE(report.hs_pass());
      EXPECT_TRUE(report.entropy_pass());
      EXPECT_LE(report.max_hs_distance(), report.hs_bound + 1e-9);
      EXPECT_GE(report.min_entropy(), report.hmin_lower - 1e-9);
    }
  }
}

TEST(Entropy, ClosedFormBounds) {
  EXPECT_NEAR(hmin_lower_bound(2, 1), -1.583365018122770108, 1e-14);
  EXPECT_NEAR(reg_lower(1e8), 18.42068065395236952, 1e-13);
  EXPECT_NEAR(reg_lower(100), 4.518992489747039036, 1e-14);
  EXPECT_NEAR(hmin_lower_bound(100, 64) / 64.0, 4.517129629437776343, 1e-13);
  EXPECT_LT(std::abs(hmin_lower_bound(100, 64) / 64.0 - reg_lower(100)), 1e-2);
  EXPECT_NEAR(hs_distance_bound(4, 2), std::sqrt(std::pow(1 + 9.0 / 4, 2) - 1) / 4.0, 1e-15);
  // Large k, frozen from a 50-digit evaluation.
  EXPECT_LT(rel(hmin_lower_bound(4, 4096), 850.49083813168947862), 1e-13);
  EXPECT_LT(rel(hmin_lower_bound(2, 1000), -1011.6009116784799252), 1e-13);
  EXPECT_LT(rel(hmin_lower_bound(100, 10000), 45189.924897470390357), 1e-13);
  EXPECT_LT(rel(hmin_lower_bound(3, 50), -14.384103622589048148), 1e-13);
  EXPECT_THROW(hmin_lower_bound(1, 1), std::invalid_argument);
  EXPECT_THROW(reg_lower(1.0), std::invalid_argument);
}

TEST(Entropy, ViolationCertificateLargeN) {
  const ViolationCertificate c = violation_certificate(1e8);
  EXPECT_TRUE(c.violated);
  EXPECT_TRUE(c.violated_loose);
  EXPECT_LT(rel(c.lhs_upper, 36.84136130369792350), 1e-15);
  EXPECT_LT(rel(c.gap_loose, 4.20680743952365472e-9), 1e-12);
  EXPECT_LT(rel(c.gap, 4.206815539523168721e-9), 1e-9);
  EXPECT_GE(c.rhs_lower, c.rhs_lower_loose);
}

TEST(Entropy, ViolationCertificateSmallN) {
  EXPECT_FALSE(violation_certificate(2).violated);
  EXPECT_FALSE(violation_certificate(1e6).violated_loose);
  EXPECT_NEAR(violation_certificate(2).lhs_upper, 1.039720770839917964, 1e-15);
  EXPECT_NEAR(violation_certificate(3).lhs_upper, 1.831020481113516152, 1e-14);
  EXPECT_NEAR(violation_certificate(4).lhs_upper, 2.426015131959808583, 1e-14);
  EXPECT_THROW(violation_certificate(1.5), std::invalid_argument);
}

TEST(Entropy, ViolationMonotoneOnGrid) {
  bool seen = false;
  bool seen_loose = false;
  for (double n = 2; n < 1e12; n *= 1.37) {
    const ViolationCertificate c = violation_certificate(n);
    if (seen) {
      ASSERT_TRUE(c.violated) << n;
    }
    if (seen_loose) {
      ASSERT_TRUE(c.violated_loose) << n;
    }
    seen = seen || c.violated;
    seen_loose = seen_loose || c.violated_loose;
    ASSERT_EQ(c.violated_loose, n > std::exp(18.0));
  }
  EXPECT_TRUE(seen);
}

TEST(Entropy, CertificateMatchesComposedSpectrum) {
  for (unsigned n : {2u, 3u, 4u}) {
    const std::vector<ChannelSpec> chain{{n, Side::left, 1}, {n, Side::right, 1}};
    const auto spec = direct_output_spectrum(chain, PureState::delta(WordTuple(1)));
    EXPECT_NEAR(von_neumann_entropy(spec), violation_certificate(n).lhs_upper, 1e-10);
  }
}

TEST(Entropy, ReportSerialization) {
  BoundReport r = BoundReport::for_parameters(2, 1, 9);
  r.add_sample(PureState::delta(WordTuple(1)), "e");
  r.add_sample(two_term_state(), "two \"term\"");
  const Json j = to_json(r);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["sample_count"], 2);
  EXPECT_EQ(j["samples"][1]["hs_pass"], true);
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "N,k,seed,state,hs_distance,hs_bound,hs_pass,entropy,hmin_lower,entropy_pass");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("\"two 'term'\""), std::string::npos);
  const Json v = to_json(violation_certificate(1e8));
  EXPECT_EQ(v["violated"], true);
}
