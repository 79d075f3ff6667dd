// SPDX-License-Identifier: Apache-2.0
#include "freemoe/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "freemoe/specnorm.hpp"

namespace freemoe {
namespace {

constexpr double kNegativeClamp = -1e-10;
constexpr double kSumTolerance = 1e-9;

std::vector<double> checked_spectrum(std::span<const double> spectrum) {
  std::vector<double> out;
  out.reserve(spectrum.size());
  double total = 0.0;
  for (double v : spectrum) {
    if (!std::isfinite(v) || v < kNegativeClamp) {
      throw std::invalid_argument("spectrum entry " + std::to_string(v) + " is negative");
    }
    total += v;
    out.push_back(std::max(v, 0.0));
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("spectrum sums to " + std::to_string(total) + ", not 1");
  }
  return out;
}

}  // namespace

double von_neumann_entropy(std::span<const double> spectrum) {
  double h = 0.0;
  for (double v : checked_spectrum(spectrum)) {
    if (v > 0.0) {
      h -= v * std::log(v);
    }
  }
  return h;
}

double renyi_entropy(std::span<const double> spectrum, double p) {
  if (!(p > 1.0)) {
    throw std::invalid_argument("Renyi order must exceed 1");
  }
  double moment = 0.0;
  for (double v : checked_spectrum(spectrum)) {
    if (v > 0.0) {
      moment += std::pow(v, p);
    }
  }
  return std::log(moment) / (1.0 - p);
}

double hs_distance_bound(unsigned n, unsigned k) {
  return block_growth_factor(n, k) / std::pow(static_cast<double>(n), 0.5 * k);
}

HsCheck hs_distance_check(unsigned n, unsigned k, const PureState& xi) {
  const ChannelSpec spec{n, Side::left, k};
  const DensityMatrix rho = complementary_output(spec, xi);
  const auto dim = static_cast<Eigen::Index>(rho.dimension());
  const Eigen::MatrixXcd diff =
      rho.matrix() - Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  HsCheck out;
  out.distance = diff.norm();
  out.bound = hs_distance_bound(n, k);
  out.pass = out.distance <= out.bound + 1e-9;
  return out;
}

double hmin_lower_bound(unsigned n, unsigned k) {
  if (n < 2 || k < 1) {
    throw std::invalid_argument("hmin_lower_bound needs N >= 2 and k >= 1");
  }
  const double x = static_cast<double>(k) * std::log1p(9.0 / n);
  // log(1 + sqrt(e^x - 1)); past x = 40 the e^-x corrections are below
  // double resolution and expm1 would overflow for large k.
  const double log_term =
      x > 40.0 ? 0.5 * x + std::log1p(std::exp(-0.5 * x)) : std::log1p(std::sqrt(std::expm1(x)));
  return k * std::log(static_cast<double>(n)) - 2.0 * log_term;
}

double reg_lower(double n) {
  if (!(n >= 2.0)) {
    throw std::invalid_argument("reg_lower needs N >= 2");
  }
  return std::log(n) - std::log1p(9.0 / n);
}

ViolationCertificate violation_certificate(double n) {
  if (!(n >= 2.0) || !std::isfinite(n)) {
    throw std::invalid_argument("violation certificate needs finite N >= 2");
  }
  const double log_n = std::log(n);
  ViolationCertificate c;
  c.N = n;
  c.lhs_upper = 2.0 * log_n - log_n / n;
  c.rhs_lower = 2.0 * reg_lower(n);
  c.rhs_lower_loose = 2.0 * log_n - 18.0 / n;
  c.gap = log_n / n - 2.0 * std::log1p(9.0 / n);
  c.gap_loose = (log_n - 18.0) / n;
  c.violated = c.gap > 0.0;
  c.violated_loose = c.gap_loose > 0.0;
  return c;
}

double complementary_entropy(unsigned n, unsigned k, const PureState& xi) {
  const DensityMatrix rho = complementary_output(ChannelSpec{n, Side::left, k}, xi);
  const auto ev = rho.eigenvalues();
  return von_neumann_entropy(ev);
}

BoundReport BoundReport::for_parameters(unsigned n, unsigned k, std::uint64_t seed) {
  BoundReport r;
  r.N = n;
  r.k = k;
  r.seed = seed;
  r.hs_bound = hs_distance_bound(n, k);
  r.hmin_lower = hmin_lower_bound(n, k);
  r.reg_lower = freemoe::reg_lower(static_cast<double>(n));
  return r;
}

const BoundSample& BoundReport::add_sample(const PureState& xi, std::string descriptor) {
  const ChannelSpec spec{N, Side::left, k};
  const DensityMatrix rho = complementary_output(spec, xi);
  const auto dim = static_cast<Eigen::Index>(rho.dimension());
  BoundSample s;
  s.state = std::move(descriptor);
  s.hs_distance =
      (rho.matrix() - Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim)).norm();
  const auto ev = rho.eigenvalues();
  s.entropy = von_neumann_entropy(ev);
  samples.push_back(std::move(s));
  return samples.back();
}

bool BoundReport::hs_pass() const {
  return std::all_of(samples.begin(), samples.end(),
                     [&](const BoundSample& s) { return s.hs_distance <= hs_bound + 1e-9; });
}

bool BoundReport::entropy_pass() const {
  return std::all_of(samples.begin(), samples.end(),
                     [&](const BoundSample& s) { return s.entropy >= hmin_lower - 1e-9; });
}

double BoundReport::max_hs_distance() const {
  double worst = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, s.hs_distance);
  }
  return worst;
}

double BoundReport::min_entropy() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    best = std::min(best, s.entropy);
  }
  return best;
}

}  // namespace freemoe
