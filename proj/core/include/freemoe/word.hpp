// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace freemoe {

/// One run g_i^e of a single generator inside a reduced word.
struct Syllable {
  std::uint32_t generator = 1;
  std::int32_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Reduced word in the free group on generators g_1, g_2, ...
///
/// Stored as run-length syllables: adjacent syllables always have distinct
/// generators and no exponent is zero. The empty word is the identity e.
/// Generator indices are limited to [1, 2^32 - 1] and exponents to the
/// int32 range; merging syllables past that range throws std::overflow_error.
class Word {
 public:
  using Storage = boost::container::small_vector<Syllable, 4>;

  Word() = default;

  /// g_i^exponent. exponent == 0 yields e.
  static Word generator(std::uint32_t index, std::int32_t exponent = 1);

  /// Reduces an arbitrary syllable list (zero exponents and adjacent
  /// repeats are allowed on input).
  static Word from_syllables(std::span<const Syllable> syllables);

  std::span<const Syllable> syllables() const noexcept {
    return {syllables_.data(), syllables_.size()};
  }
  bool is_identity() const noexcept { return syllables_.empty(); }

  /// Reduced word length |w|: sum of |exponent|.
  std::size_t length() const noexcept;

  Word inverse() const;

  /// Appends `rhs` to *this and reduces.
  Word& operator*=(const Word& rhs);

  friend Word operator*(Word lhs, const Word& rhs) {
    lhs *= rhs;
    return lhs;
  }

  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.syllables_ == b.syllables_;
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  void push_reduced(Syllable s);

  Storage syllables_;
};

inline Word multiply(const Word& u, const Word& v) { return u * v; }
inline Word inverse(const Word& w) { return w.inverse(); }
inline std::size_t length(const Word& w) { return w.length(); }

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

/// Thrown by parse_word; position() is the 0-based offset of the offending
/// character in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: word := "e" | term ("*" term)* ; term := "g" INT ("^" NONZERO_INT)?
/// Whitespace is ignored. The result is reduced.
Word parse_word(std::string_view text);

/// Canonical text form: "e", or terms joined by '*', with "^k" only for k != 1.
std::string format(const Word& w);

/// Element of the direct product F^r. Arity is fixed at construction.
class WordTuple {
 public:
  using Storage = boost::container::small_vector<Word, 2>;

  /// Identity tuple (e, ..., e).
  explicit WordTuple(std::size_t arity);
  WordTuple(std::initializer_list<Word> components);
  explicit WordTuple(std::vector<Word> components);

  std::size_t arity() const noexcept { return components_.size(); }
  const Word& operator[](std::size_t j) const { return components_[j]; }
  Word& operator[](std::size_t j) { return components_[j]; }
  std::span<const Word> components() const noexcept {
    return {components_.data(), components_.size()};
  }

  bool is_identity() const noexcept;
  WordTuple inverse() const;

  /// Componentwise product; throws std::invalid_argument on arity mismatch.
  WordTuple& operator*=(const WordTuple& rhs);
  friend WordTuple operator*(WordTuple lhs, const WordTuple& rhs) {
    lhs *= rhs;
    return lhs;
  }

  friend bool operator==(const WordTuple& a, const WordTuple& b) noexcept {
    return a.components_ == b.components_;
  }
  friend std::strong_ordering operator<=>(const WordTuple& a, const WordTuple& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  Storage components_;
};

struct WordTupleHash {
  std::size_t operator()(const WordTuple& t) const noexcept { return t.hash(); }
};

/// Componentwise word lengths; t lies in E_m iff multi_length(t) == m.
std::vector<std::size_t> multi_length(const WordTuple& t);

/// "(w1, w2, ...)" using format() for each component.
std::string format(const WordTuple& t);

/// Accepts a single word ("g1*g2") for arity 1 or a parenthesised,
/// comma-separated list "(g1, e)".
WordTuple parse_tuple(std::string_view text);

}  // namespace freemoe
