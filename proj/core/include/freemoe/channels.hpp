// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "freemoe/scalar.hpp"
#include "freemoe/word.hpp"

namespace freemoe {

/// Raised when a finite matrix or search space would exceed its configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { left, right };

std::string to_string(Side side);

/// rho -> (1/N) sum_i K_i rho K_i^*, tensored k times. Left Kraus operators
/// are U_i delta_x = delta_{g_i x}; right ones are V_j delta_x = delta_{x g_j^{-1}}.
struct ChannelSpec {
  unsigned N = 2;
  Side side = Side::left;
  unsigned k = 1;

  /// Throws std::invalid_argument unless N >= 2 and k >= 1.
  void validate() const;
  /// N^k, the number of Kraus multi-indices.
  std::size_t kraus_count() const;
};

/// Finitely supported unit vector in l^2(F^k).
class PureState {
 public:
  using Map = std::unordered_map<WordTuple, Complex, WordTupleHash>;

  /// Throws std::invalid_argument if ||xi|| deviates from 1 by more than
  /// 1e-12 or any key has the wrong arity.
  PureState(std::size_t arity, Map amplitudes);

  static PureState delta(const WordTuple& key);
  /// Rescales to unit norm; throws if all amplitudes vanish.
  static PureState normalized(std::size_t arity, Map amplitudes);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  const Map& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(const WordTuple& key) const;
  double norm() const;

 private:
  PureState() = default;
  std::size_t arity_ = 1;
  Map amplitudes_;
};

/// <a, b> = sum_x conj(a(x)) b(x); iterates the smaller support.
Complex inner_product(const PureState& a, const PureState& b);

/// Finite Hermitian PSD trace-one matrix.
class DensityMatrix {
 public:
  /// Symmetrises (M + M^*)/2 and validates Hermitian-ness (1e-12), trace
  /// (1e-12) and eigenvalues (>= -1e-10); throws std::invalid_argument.
  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  /// Eigenvalues, sorted descending.
  std::vector<double> eigenvalues() const;

 private:
  Eigen::MatrixXcd matrix_;
};

/// Applies U_m (left) or V_m (right) for m in {1..N}^k, one factor per
/// tensor component.
PureState apply_unitary(const ChannelSpec& spec, std::span<const unsigned> multi_index,
                        const PureState& xi);

/// N^k x N^k matrix with entry (i, i') = N^{-k} <U_{i'} xi, U_i xi>.
DensityMatrix complementary_output(const ChannelSpec& spec, const PureState& xi);

/// Gram-matrix cap for direct_output_spectrum.
inline constexpr std::size_t default_gram_cap = 4096;

/// Nonzero spectrum (descending) of the direct output of the channel chain
/// on |xi><xi|. chain.front() is applied last. Eigenvalues below 1e-12 are
/// dropped. Throws ResourceLimitError when the Kraus count exceeds gram_cap.
std::vector<double> direct_output_spectrum(std::span<const ChannelSpec> chain,
                                           const PureState& xi,
                                           std::size_t gram_cap = default_gram_cap);

/// (x_1, ..., x_k) -> (x_1^{-1}, ..., x_k^{-1}).
PureState j_conjugate(const PureState& xi);

/// Eigenvalues of rho above 1e-12, descending.
std::vector<double> nonzero_spectrum(const DensityMatrix& rho);

/// Largest per-eigenvalue difference after sorting both spectra
/// descending and padding the shorter with zeros.
double spectral_mismatch(std::vector<double> a, std::vector<double> b);

}  // namespace freemoe
