// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "freemoe/scalar.hpp"
#include "freemoe/word.hpp"

namespace freemoe {

/// Finitely supported function F^r -> S, i.e. an element of the group
/// algebra C[F^r]. Zero coefficients are never stored.
///
/// S is either Complex (float mode) or ComplexRational (exact mode).
template <class S>
class AlgebraElement {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Map = std::unordered_map<WordTuple, S, WordTupleHash>;

  explicit AlgebraElement(std::size_t arity) : arity_(arity) {
    if (arity == 0) {
      throw std::invalid_argument("algebra element arity must be at least 1");
    }
  }

  /// coefficient * delta_key.
  static AlgebraElement delta(const WordTuple& key, S coefficient = Traits::one()) {
    AlgebraElement f(key.arity());
    f.add_term(key, std::move(coefficient));
    return f;
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const Map& terms() const noexcept { return terms_; }

  S coefficient(const WordTuple& key) const {
    const auto it = terms_.find(key);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  /// Adds `c` to the coefficient at `key`, dropping the entry if it becomes zero.
  void add_term(const WordTuple& key, const S& c) {
    check_key(key);
    if (Traits::is_zero(c)) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) {
        terms_.erase(it);
      }
    }
  }

  /// Terms ordered by key; used wherever output must be reproducible.
  std::vector<std::pair<WordTuple, S>> sorted_terms() const {
    std::vector<std::pair<WordTuple, S>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  AlgebraElement& operator+=(const AlgebraElement& g) {
    check_arity(g);
    for (const auto& [key, c] : g.terms_) {
      add_term(key, c);
    }
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& g) {
    check_arity(g);
    for (const auto& [key, c] : g.terms_) {
      add_term(key, -c);
    }
    return *this;
  }
  AlgebraElement& operator*=(const S& c) {
    if (Traits::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= c;
      if (Traits::is_zero(it->second)) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement f, const AlgebraElement& g) { return f += g; }
  friend AlgebraElement operator-(AlgebraElement f, const AlgebraElement& g) { return f -= g; }
  friend AlgebraElement operator*(const S& c, AlgebraElement f) { return f *= c; }

  friend bool operator==(const AlgebraElement& f, const AlgebraElement& g) {
    return f.arity_ == g.arity_ && f.terms_ == g.terms_;
  }

  void check_arity(const AlgebraElement& g) const {
    if (g.arity_ != arity_) {
      throw std::invalid_argument("algebra element arity mismatch");
    }
  }

  /// Moves an accumulated map in, erasing entries that summed to zero.
  static AlgebraElement from_accumulated(std::size_t arity, Map&& accumulated) {
    AlgebraElement f(arity);
    std::erase_if(accumulated, [](const auto& kv) { return Traits::is_zero(kv.second); });
    f.terms_ = std::move(accumulated);
    return f;
  }

 private:
  void check_key(const WordTuple& key) const {
    if (key.arity() != arity_) {
      throw std::invalid_argument("key arity does not match algebra element arity");
    }
  }

  std::size_t arity_;
  Map terms_;
};

using FloatElement = AlgebraElement<Complex>;
using ExactElement = AlgebraElement<ComplexRational>;

namespace detail {

template <class S>
std::optional<AlgebraElement<S>> convolve_impl(const AlgebraElement<S>& f,
                                               const AlgebraElement<S>& g,
                                               std::optional<std::size_t> support_budget) {
  f.check_arity(g);
  using Map = typename AlgebraElement<S>::Map;
  Map acc;
  if (f.empty() || g.empty()) {
    return AlgebraElement<S>(f.arity());
  }
  const std::size_t bound = f.size() * g.size();
  if (support_budget && bound > *support_budget) {
    // Count distinct result keys by hash before building coefficients, so an
    // over-budget product is rejected without materialising scalars.
    std::unordered_set<std::size_t> seen;
    seen.reserve(*support_budget + 1);
    for (const auto& [kf, cf] : f.terms()) {
      for (const auto& [kg, cg] : g.terms()) {
        seen.insert((kf * kg).hash());
        if (seen.size() > *support_budget) {
          return std::nullopt;
        }
      }
    }
  }
  acc.reserve(support_budget ? std::min(bound, *support_budget + 1) : bound);

  // Iterating the smaller operand outermost keeps the inner loop long; the
  // product order tu is fixed either way.
  const bool f_outer = f.size() <= g.size();
  const auto& outer = f_outer ? f.terms() : g.terms();
  const auto& inner = f_outer ? g.terms() : f.terms();
  for (const auto& [ko, co] : outer) {
    for (const auto& [ki, ci] : inner) {
      WordTuple key = f_outer ? ko * ki : ki * ko;
      auto [it, inserted] = acc.try_emplace(std::move(key), ScalarTraits<S>::zero());
      if (f_outer) {
        ScalarTraits<S>::add_product(it->second, co, ci);
      } else {
        ScalarTraits<S>::add_product(it->second, ci, co);
      }
      if (inserted && support_budget && acc.size() > *support_budget) {
        return std::nullopt;
      }
    }
  }
  return AlgebraElement<S>::from_accumulated(f.arity(), std::move(acc));
}

}  // namespace detail

/// (f*g)(s) = sum over tu = s of f(t) g(u).
template <class S>
AlgebraElement<S> convolve(const AlgebraElement<S>& f, const AlgebraElement<S>& g) {
  return *detail::convolve_impl(f, g, std::nullopt);
}

/// As convolve(), but gives up (returns nullopt) once the partial result
/// holds more than `support_budget` keys.
template <class S>
std::optional<AlgebraElement<S>> convolve_within(const AlgebraElement<S>& f,
                                                 const AlgebraElement<S>& g,
                                                 std::size_t support_budget) {
  return detail::convolve_impl(f, g, support_budget);
}

/// Pointwise product with the indicator of E_m.
template <class S>
AlgebraElement<S> restrict(const AlgebraElement<S>& f, const std::vector<std::size_t>& m) {
  if (m.size() != f.arity()) {
    throw std::invalid_argument("grade vector dimension does not match arity");
  }
  AlgebraElement<S> out(f.arity());
  for (const auto& [key, c] : f.terms()) {
    if (multi_length(key) == m) {
      out.add_term(key, c);
    }
  }
  return out;
}

/// Splits f into its nonzero graded pieces f * chi_{E_m}, keyed by m.
template <class S>
std::vector<std::pair<std::vector<std::size_t>, AlgebraElement<S>>> grade_decomposition(
    const AlgebraElement<S>& f) {
  std::vector<std::pair<std::vector<std::size_t>, AlgebraElement<S>>> pieces;
  for (const auto& [key, c] : f.terms()) {
    auto m = multi_length(key);
    auto it = std::find_if(pieces.begin(), pieces.end(),
                           [&](const auto& p) { return p.first == m; });
    if (it == pieces.end()) {
      pieces.emplace_back(std::move(m), AlgebraElement<S>(f.arity()));
      it = std::prev(pieces.end());
    }
    it->second.add_term(key, c);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return pieces;
}

/// Sum of |coefficient|^2, exact in exact mode.
template <class S>
typename ScalarTraits<S>::Real l2_norm_squared(const AlgebraElement<S>& f) {
  typename ScalarTraits<S>::Real total = 0;
  for (const auto& [key, c] : f.terms()) {
    total += ScalarTraits<S>::norm(c);
  }
  return total;
}

template <class S>
double l2_norm(const AlgebraElement<S>& f) {
  return std::sqrt(ScalarTraits<S>::to_double(l2_norm_squared(f)));
}

/// Canonical trace: the coefficient at the identity.
template <class S>
S trace(const AlgebraElement<S>& f) {
  return f.coefficient(WordTuple(f.arity()));
}

/// f*(x) = conj(f(x^{-1})).
template <class S>
AlgebraElement<S> adjoint(const AlgebraElement<S>& f) {
  AlgebraElement<S> out(f.arity());
  for (const auto& [key, c] : f.terms()) {
    out.add_term(key.inverse(), ScalarTraits<S>::conj(c));
  }
  return out;
}

/// <f, g> = sum_x f(x) conj(g(x)), iterating the smaller support.
template <class S>
S inner_product(const AlgebraElement<S>& f, const AlgebraElement<S>& g) {
  f.check_arity(g);
  S total = ScalarTraits<S>::zero();
  if (f.size() <= g.size()) {
    for (const auto& [key, c] : f.terms()) {
      const auto it = g.terms().find(key);
      if (it != g.terms().end()) {
        ScalarTraits<S>::add_product(total, c, ScalarTraits<S>::conj(it->second));
      }
    }
  } else {
    for (const auto& [key, c] : g.terms()) {
      const auto it = f.terms().find(key);
      if (it != f.terms().end()) {
        ScalarTraits<S>::add_product(total, it->second, ScalarTraits<S>::conj(c));
      }
    }
  }
  return total;
}

/// Rounds exact coefficients to doubles.
FloatElement to_float(const ExactElement& f);

extern template class AlgebraElement<Complex>;
extern template class AlgebraElement<ComplexRational>;

}  // namespace freemoe
