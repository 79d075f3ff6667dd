// SPDX-License-Identifier: Apache-2.0
#include "freemoe/channels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace freemoe {
namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kChannelUnitTolerance = 1e-9;
constexpr double kZeroEigenvalue = 1e-12;

double norm_of(const PureState::Map& amplitudes) {
  double total = 0.0;
  for (const auto& [key, c] : amplitudes) {
    total += std::norm(c);
  }
  return std::sqrt(total);
}

void check_arity(const PureState::Map& amplitudes, std::size_t arity) {
  for (const auto& [key, c] : amplitudes) {
    if (key.arity() != arity) {
      throw std::invalid_argument("state key arity does not match state arity");
    }
  }
}

/// All multi-indices in {1..N}^k in lexicographic order (first slot slowest).
std::vector<std::vector<unsigned>> all_multi_indices(unsigned n, unsigned k) {
  std::size_t count = 1;
  for (unsigned j = 0; j < k; ++j) {
    count *= n;
  }
  std::vector<std::vector<unsigned>> out(count, std::vector<unsigned>(k));
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    std::size_t rest = alpha;
    for (unsigned j = k; j-- > 0;) {
      out[alpha][j] = static_cast<unsigned>(rest % n) + 1;
      rest /= n;
    }
  }
  return out;
}

WordTuple shift_key(const ChannelSpec& spec, std::span<const unsigned> m, const WordTuple& key) {
  WordTuple out = key;
  for (unsigned j = 0; j < spec.k; ++j) {
    if (spec.side == Side::left) {
      out[j] = Word::generator(m[j]) * key[j];
    } else {
      out[j] = key[j] * Word::generator(m[j], -1);
    }
  }
  return out;
}

void check_state_for(const ChannelSpec& spec, const PureState& xi) {
  spec.validate();
  if (xi.arity() != spec.k) {
    throw std::invalid_argument("state arity " + std::to_string(xi.arity()) +
                                " does not match channel tensor power " + std::to_string(spec.k));
  }
}

/// Kraus images K_alpha xi for every alpha, stored as (alpha, amplitude)
/// lists per output key so that the Gram matrix only touches colliding pairs.
using Collisions = std::unordered_map<WordTuple, std::vector<std::pair<std::size_t, Complex>>,
                                      WordTupleHash>;

Eigen::MatrixXcd gram_from_collisions(const Collisions& hits, std::size_t dim, double weight) {
  // Visit keys in sorted order so float sums are reproducible.
  std::vector<const Collisions::value_type*> ordered;
  ordered.reserve(hits.size());
  for (const auto& kv : hits) {
    ordered.push_back(&kv);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
  for (const auto* kv : ordered) {
    for (const auto& [a, ca] : kv->second) {
      for (const auto& [b, cb] : kv->second) {
        // G(a, b) = w <K_b xi, K_a xi> = w sum_x conj(K_b xi(x)) K_a xi(x)
        gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += std::conj(cb) * ca;
      }
    }
  }
  return gram * weight;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

std::string to_string(Side side) { return side == Side::left ? "left" : "right"; }

void ChannelSpec::validate() const {
  if (N < 2) {
    throw std::invalid_argument("channel needs N >= 2 Kraus unitaries");
  }
  if (k < 1) {
    throw std::invalid_argument("tensor power k must be at least 1");
  }
}

std::size_t ChannelSpec::kraus_count() const {
  std::size_t count = 1;
  for (unsigned j = 0; j < k; ++j) {
    if (count > (std::size_t{1} << 40) / N) {
      throw ResourceLimitError("Kraus family size N^k overflows");
    }
    count *= N;
  }
  return count;
}

PureState::PureState(std::size_t arity, Map amplitudes)
    : arity_(arity), amplitudes_(std::move(amplitudes)) {
  if (arity == 0) {
    throw std::invalid_argument("state arity must be at least 1");
  }
  check_arity(amplitudes_, arity_);
  std::erase_if(amplitudes_, [](const auto& kv) { return kv.second == Complex{}; });
  const double n = norm_of(amplitudes_);
  if (std::abs(n - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("state is not a unit vector (norm " + std::to_string(n) + ")");
  }
}

PureState PureState::delta(const WordTuple& key) {
  Map m;
  m.emplace(key, Complex{1.0, 0.0});
  return PureState(key.arity(), std::move(m));
}

PureState PureState::normalized(std::size_t arity, Map amplitudes) {
  check_arity(amplitudes, arity);
  const double n = norm_of(amplitudes);
  if (n == 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalise a zero or non-finite vector");
  }
  for (auto& [key, c] : amplitudes) {
    c /= n;
  }
  return PureState(arity, std::move(amplitudes));
}

Complex PureState::amplitude(const WordTuple& key) const {
  const auto it = amplitudes_.find(key);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double PureState::norm() const { return norm_of(amplitudes_); }

Complex inner_product(const PureState& a, const PureState& b) {
  Complex total{};
  if (a.size() <= b.size()) {
    for (const auto& [key, ca] : a.amplitudes()) {
      total += std::conj(ca) * b.amplitude(key);
    }
  } else {
    for (const auto& [key, cb] : b.amplitudes()) {
      total += std::conj(a.amplitude(key)) * cb;
    }
  }
  return total;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and nonempty");
  }
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix + matrix.adjoint());
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > 1e-12) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const auto ev = eigenvalues();
  if (!ev.empty() && ev.back() < -1e-10) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& v = solver.eigenvalues();
  return sorted_desc(std::vector<double>(v.data(), v.data() + v.size()));
}

PureState apply_unitary(const ChannelSpec& spec, std::span<const unsigned> multi_index,
                        const PureState& xi) {
  check_state_for(spec, xi);
  if (multi_index.size() != spec.k) {
    throw std::invalid_argument("multi-index length must equal the tensor power k");
  }
  for (unsigned i : multi_index) {
    if (i < 1 || i > spec.N) {
      throw std::out_of_range("Kraus index " + std::to_string(i) + " outside 1.." +
                              std::to_string(spec.N));
    }
  }
  PureState::Map out;
  out.reserve(xi.size());
  for (const auto& [key, c] : xi.amplitudes()) {
    out.emplace(shift_key(spec, multi_index, key), c);
  }
  return PureState(xi.arity(), std::move(out));
}

DensityMatrix complementary_output(const ChannelSpec& spec, const PureState& xi) {
  check_state_for(spec, xi);
  if (std::abs(xi.norm() - 1.0) > kChannelUnitTolerance) {
    throw std::invalid_argument("complementary channel input must be a unit vector");
  }
  if (spec.kraus_count() > default_gram_cap) {
    throw ResourceLimitError("complementary output dimension N^k exceeds cap " +
                             std::to_string(default_gram_cap));
  }
  const auto indices = all_multi_indices(spec.N, spec.k);
  Collisions hits;
  for (std::size_t alpha = 0; alpha < indices.size(); ++alpha) {
    for (const auto& [key, c] : xi.amplitudes()) {
      hits[shift_key(spec, indices[alpha], key)].emplace_back(alpha, c);
    }
  }
  const double weight = 1.0 / static_cast<double>(indices.size());
  return DensityMatrix(gram_from_collisions(hits, indices.size(), weight));
}

std::vector<double> direct_output_spectrum(std::span<const ChannelSpec> chain,
                                           const PureState& xi, std::size_t gram_cap) {
  if (chain.empty()) {
    throw std::invalid_argument("channel chain must be nonempty");
  }
  std::size_t dim = 1;
  double weight = 1.0;
  std::vector<std::vector<std::vector<unsigned>>> per_channel;
  for (const ChannelSpec& spec : chain) {
    check_state_for(spec, xi);
    const std::size_t count = spec.kraus_count();
    if (count > gram_cap || dim > gram_cap / count) {
      throw ResourceLimitError("Gram matrix dimension exceeds cap " + std::to_string(gram_cap) +
                               "; use smaller N or k");
    }
    dim *= count;
    weight /= static_cast<double>(count);
    per_channel.push_back(all_multi_indices(spec.N, spec.k));
  }

  // Row alpha enumerates (alpha_front, ..., alpha_back) with the last
  // channel varying fastest; the last channel acts on xi first.
  Collisions hits;
  std::vector<std::size_t> digits(chain.size(), 0);
  for (std::size_t alpha = 0; alpha < dim; ++alpha) {
    std::size_t rest = alpha;
    for (std::size_t s = chain.size(); s-- > 0;) {
      digits[s] = rest % per_channel[s].size();
      rest /= per_channel[s].size();
    }
    for (const auto& [key, c] : xi.amplitudes()) {
      WordTuple image = key;
      for (std::size_t s = chain.size(); s-- > 0;) {
        image = shift_key(chain[s], per_channel[s][digits[s]], image);
      }
      hits[std::move(image)].emplace_back(alpha, c);
    }
  }
  Eigen::MatrixXcd gram = gram_from_collisions(hits, dim, weight);
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()[i] > kZeroEigenvalue) {
      out.push_back(solver.eigenvalues()[i]);
    }
  }
  return sorted_desc(std::move(out));
}

PureState j_conjugate(const PureState& xi) {
  PureState::Map out;
  out.reserve(xi.size());
  for (const auto& [key, c] : xi.amplitudes()) {
    out.emplace(key.inverse(), c);
  }
  return PureState(xi.arity(), std::move(out));
}

std::vector<double> nonzero_spectrum(const DensityMatrix& rho) {
  std::vector<double> out;
  for (double v : rho.eigenvalues()) {
    if (v > kZeroEigenvalue) {
      out.push_back(v);
    }
  }
  return out;
}

double spectral_mismatch(std::vector<double> a, std::vector<double> b) {
  a = sorted_desc(std::move(a));
  b = sorted_desc(std::move(b));
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace freemoe
