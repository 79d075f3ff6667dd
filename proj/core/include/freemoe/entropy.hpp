// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "freemoe/channels.hpp"

namespace freemoe {

// All entropies are in nats.

/// -sum lambda log lambda with 0 log 0 = 0.
///
/// Entries in [-1e-10, 0) are clamped to zero; anything more negative, or a
/// total that misses 1 by more than 1e-9, throws std::invalid_argument.
double von_neumann_entropy(std::span<const double> spectrum);

/// log(sum lambda^p) / (1 - p) for p > 1, with the same input checks.
double renyi_entropy(std::span<const double> spectrum, double p);

struct HsCheck {
  double distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// sqrt((1 + 9/N)^k - 1) / N^(k/2).
double hs_distance_bound(unsigned n, unsigned k);

/// Hilbert-Schmidt distance between the k-fold complementary output of the
/// left channel on xi and the maximally mixed state, against the bound.
HsCheck hs_distance_check(unsigned n, unsigned k, const PureState& xi);

/// k log N - 2 log(1 + sqrt((1 + 9/N)^k - 1)).
double hmin_lower_bound(unsigned n, unsigned k);

/// log N - log(1 + 9/N): the limit of hmin_lower_bound(N, k) / k.
double reg_lower(double n);

/// Additivity check for the composed left/right channel pair.
///
/// lhs_upper is the output entropy on |e><e|, an upper bound for the
/// regularized minimum output entropy of the composition. rhs_lower is
/// twice reg_lower(N); rhs_lower_loose uses the weaker log N - 9/N per
/// channel. Gaps are evaluated in cancellation-free closed form.
struct ViolationCertificate {
  double N = 0.0;
  double lhs_upper = 0.0;
  double rhs_lower = 0.0;
  double rhs_lower_loose = 0.0;
  /// rhs_lower - lhs_upper = log(N)/N - 2 log(1 + 9/N).
  double gap = 0.0;
  /// rhs_lower_loose - lhs_upper = (log N - 18)/N.
  double gap_loose = 0.0;
  bool violated = false;
  bool violated_loose = false;
};

/// Throws std::invalid_argument for N < 2.
ViolationCertificate violation_certificate(double n);

/// Output entropy on |xi><xi| of the single left channel, via the
/// complementary output (same nonzero spectrum).
double complementary_entropy(unsigned n, unsigned k, const PureState& xi);

struct BoundSample {
  std::string state;
  double hs_distance = 0.0;
  double entropy = 0.0;
};

/// Closed-form bounds for one (N, k) plus the observed samples.
struct BoundReport {
  unsigned N = 2;
  unsigned k = 1;
  std::uint64_t seed = 0;
  double hs_bound = 0.0;
  double hmin_lower = 0.0;
  double reg_lower = 0.0;
  std::vector<BoundSample> samples;

  static BoundReport for_parameters(unsigned n, unsigned k, std::uint64_t seed);
  /// Evaluates one state and appends it.
  const BoundSample& add_sample(const PureState& xi, std::string descriptor);

  bool hs_pass() const;
  bool entropy_pass() const;
  double max_hs_distance() const;
  double min_entropy() const;
};

/// Tuples of words over g_1..g_N whose components all have length <= radius,
/// sorted; the identity tuple comes first.
std::vector<WordTuple> ball_basis(unsigned n, unsigned k, unsigned radius);

/// H(complementary_output(xi)) as a smooth function of the coefficient
/// vector of xi over a fixed finite basis, with its analytic gradient.
///
/// Off the unit sphere the objective is -tr(rho log rho) of the unnormalised
/// rho(x) = N^{-k} sum conj(x_b) x_c [...], so the gradient is the ambient one.
class EntropyObjective {
 public:
  EntropyObjective(unsigned n, unsigned k, std::vector<WordTuple> basis);

  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<WordTuple>& basis() const noexcept { return basis_; }

  Eigen::MatrixXcd output_matrix(std::span<const Complex> x) const;
  double value(std::span<const Complex> x) const;
  /// Real gradient packed as complex: component b is dH/dRe x_b + i dH/dIm x_b.
  std::vector<Complex> gradient(std::span<const Complex> x) const;

 private:
  struct Link {
    std::uint32_t row;  // i
    std::uint32_t col;  // i'
    std::uint32_t c;    // unconjugated basis index
    std::uint32_t b;    // conjugated basis index
  };

  unsigned n_;
  unsigned k_;
  std::size_t out_dim_;
  double weight_;
  std::vector<WordTuple> basis_;
  std::vector<Link> links_;
};

struct OptimizerConfig {
  unsigned restarts = 8;
  unsigned iterations = 300;
  double step = 0.5;
  std::uint64_t seed = 0;
  /// Cap on both the output dimension N^k and the basis size.
  std::size_t gram_cap = default_gram_cap;
  double gradient_tolerance = 1e-10;
};

struct MinimizeResult {
  PureState state;
  double entropy = 0.0;
  std::size_t basis_size = 0;
  unsigned best_restart = 0;
};

/// Projected gradient descent on the unit sphere of the radius-R ball's
/// coefficient space, from delta_e and from random restarts. The returned
/// entropy is attained by the returned state, hence an upper bound for the
/// minimum output entropy.
///
/// Throws ResourceLimitError when N^k or the ball size exceeds gram_cap.
MinimizeResult minimize_entropy(unsigned n, unsigned k, unsigned radius,
                                const OptimizerConfig& config = {});

}  // namespace freemoe
