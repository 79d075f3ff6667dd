// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "freemoe/algebra.hpp"
#include "freemoe/channels.hpp"
#include "freemoe/specnorm.hpp"

namespace freemoe {

using Rng = std::mt19937_64;

/// Per-task seed: a splitmix64 hash of (root, index).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Uniform reduced word of exactly `length` letters over g_1^{+-1}..g_G^{+-1}.
Word random_word(Rng& rng, std::size_t length, unsigned generators);

/// Componentwise random_word with the given lengths.
WordTuple random_tuple(Rng& rng, const std::vector<std::size_t>& lengths, unsigned generators);

/// Random unit vector: support drawn from [1, max_support] keys, each
/// component length from [0, max_radius], complex Gaussian amplitudes.
PureState random_state(Rng& rng, std::size_t arity, std::size_t max_support,
                       std::size_t max_radius, unsigned generators);

/// Random element supported on the single grade E_grade with support size
/// in [1, max_support]. Exact coefficients are Gaussian integers with parts
/// in [-3, 3]; float ones are complex Gaussian.
template <class S>
AlgebraElement<S> random_graded_element(Rng& rng, const std::vector<std::size_t>& grade,
                                        std::size_t max_support, unsigned generators);

/// Random a with tr(a) = 0, adjusted through the last diagonal entry.
template <class S>
CoefficientMatrix<S> random_traceless_matrix(Rng& rng, unsigned n, unsigned k);

}  // namespace freemoe
