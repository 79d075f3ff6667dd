// SPDX-License-Identifier: Apache-2.0
#include "freemoe/sampling.hpp"

#include <stdexcept>

namespace freemoe {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ComplexRational small_gaussian_integer(Rng& rng) {
  std::uniform_int_distribution<long> part(-3, 3);
  while (true) {
    const long re = part(rng);
    const long im = part(rng);
    if (re != 0 || im != 0) {
      return ComplexRational(re, im);
    }
  }
}

template <class S>
S random_coefficient(Rng& rng) {
  if constexpr (ScalarTraits<S>::exact) {
    return small_gaussian_integer(rng);
  } else {
    return gaussian(rng);
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(splitmix64(root) ^ (index * 0xd1b54a32d192ed03ULL));
}

Word random_word(Rng& rng, std::size_t length, unsigned generators) {
  if (generators == 0) {
    throw std::invalid_argument("random_word needs at least one generator");
  }
  // Letters are coded 0..2G-1: 2(g-1) is g, 2(g-1)+1 is g^{-1}.
  const unsigned letters = 2 * generators;
  std::vector<Syllable> raw;
  raw.reserve(length);
  int previous = -1;
  for (std::size_t i = 0; i < length; ++i) {
    unsigned letter = 0;
    if (previous < 0) {
      letter = std::uniform_int_distribution<unsigned>(0, letters - 1)(rng);
    } else {
      // Skip the inverse of the previous letter.
      const unsigned forbidden = static_cast<unsigned>(previous) ^ 1u;
      letter = std::uniform_int_distribution<unsigned>(0, letters - 2)(rng);
      if (letter >= forbidden) {
        ++letter;
      }
    }
    raw.push_back({letter / 2 + 1, (letter & 1u) ? -1 : 1});
    previous = static_cast<int>(letter);
  }
  return Word::from_syllables(raw);
}

WordTuple random_tuple(Rng& rng, const std::vector<std::size_t>& lengths, unsigned generators) {
  std::vector<Word> parts;
  parts.reserve(lengths.size());
  for (std::size_t len : lengths) {
    parts.push_back(random_word(rng, len, generators));
  }
  return WordTuple(std::move(parts));
}

PureState random_state(Rng& rng, std::size_t arity, std::size_t max_support,
                       std::size_t max_radius, unsigned generators) {
  if (max_support == 0) {
    throw std::invalid_argument("random_state needs max_support >= 1");
  }
  const std::size_t support = std::uniform_int_distribution<std::size_t>(1, max_support)(rng);
  std::uniform_int_distribution<std::size_t> radius(0, max_radius);
  PureState::Map amplitudes;
  for (std::size_t s = 0; s < support; ++s) {
    std::vector<std::size_t> lengths(arity);
    for (auto& len : lengths) {
      len = radius(rng);
    }
    amplitudes[random_tuple(rng, lengths, generators)] += gaussian(rng);
  }
  return PureState::normalized(arity, std::move(amplitudes));
}

template <class S>
AlgebraElement<S> random_graded_element(Rng& rng, const std::vector<std::size_t>& grade,
                                        std::size_t max_support, unsigned generators) {
  const std::size_t support = std::uniform_int_distribution<std::size_t>(1, max_support)(rng);
  AlgebraElement<S> f(grade.size());
  for (std::size_t s = 0; s < support; ++s) {
    f.add_term(random_tuple(rng, grade, generators), random_coefficient<S>(rng));
  }
  return f;
}

template <class S>
CoefficientMatrix<S> random_traceless_matrix(Rng& rng, unsigned n, unsigned k) {
  CoefficientMatrix<S> a(n, k);
  const std::size_t d = a.dimension();
  std::bernoulli_distribution keep(0.7);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (keep(rng)) {
        a(r, c) = random_coefficient<S>(rng);
      }
    }
  }
  a(d - 1, d - 1) -= a.trace();
  return a;
}

template AlgebraElement<Complex> random_graded_element<Complex>(Rng&, const std::vector<std::size_t>&,
                                                                std::size_t, unsigned);
template AlgebraElement<ComplexRational> random_graded_element<ComplexRational>(
    Rng&, const std::vector<std::size_t>&, std::size_t, unsigned);
template CoefficientMatrix<Complex> random_traceless_matrix<Complex>(Rng&, unsigned, unsigned);
template CoefficientMatrix<ComplexRational> random_traceless_matrix<ComplexRational>(Rng&, unsigned,
                                                                                     unsigned);

}  // namespace freemoe
