// SPDX-License-Identifier: Apache-2.0
#include "freemoe/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace freemoe {
namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::int32_t checked_exponent(std::int64_t e) {
  if (e > std::numeric_limits<std::int32_t>::max() ||
      e < std::numeric_limits<std::int32_t>::min()) {
    throw std::overflow_error("free group exponent exceeds int32 range");
  }
  return static_cast<std::int32_t>(e);
}

}  // namespace

Word Word::generator(std::uint32_t index, std::int32_t exponent) {
  if (index == 0) {
    throw std::invalid_argument("generator index must be positive");
  }
  Word w;
  if (exponent != 0) {
    w.syllables_.push_back({index, exponent});
  }
  return w;
}

Word Word::from_syllables(std::span<const Syllable> syllables) {
  Word w;
  for (const Syllable& s : syllables) {
    if (s.generator == 0) {
      throw std::invalid_argument("generator index must be positive");
    }
    w.push_reduced(s);
  }
  return w;
}

void Word::push_reduced(Syllable s) {
  if (s.exponent == 0) {
    return;
  }
  if (!syllables_.empty() && syllables_.back().generator == s.generator) {
    const auto merged =
        checked_exponent(std::int64_t{syllables_.back().exponent} + s.exponent);
    if (merged == 0) {
      syllables_.pop_back();
    } else {
      syllables_.back().exponent = merged;
    }
    return;
  }
  syllables_.push_back(s);
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const Syllable& s : syllables_) {
    n += static_cast<std::size_t>(std::abs(std::int64_t{s.exponent}));
  }
  return n;
}

Word Word::inverse() const {
  Word w;
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
    w.syllables_.push_back({it->generator, checked_exponent(-std::int64_t{it->exponent})});
  }
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  // Cancel the tail of *this against the head of rhs; at most one partial
  // merge can survive, after which the remainder is appended verbatim.
  std::size_t i = 0;
  const auto& r = rhs.syllables_;
  while (i < r.size() && !syllables_.empty() &&
         syllables_.back().generator == r[i].generator) {
    const auto merged =
        checked_exponent(std::int64_t{syllables_.back().exponent} + r[i].exponent);
    if (merged != 0) {
      syllables_.back().exponent = merged;
      ++i;
      break;
    }
    syllables_.pop_back();
    ++i;
  }
  syllables_.insert(syllables_.end(), r.begin() + static_cast<std::ptrdiff_t>(i), r.end());
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
  return std::lexicographical_compare_three_way(a.syllables_.begin(), a.syllables_.end(),
                                                b.syllables_.begin(), b.syllables_.end());
}

std::size_t Word::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ syllables_.size();
  for (const Syllable& s : syllables_) {
    const std::uint64_t packed =
        (std::uint64_t{s.generator} << 32) | static_cast<std::uint32_t>(s.exponent);
    h = mix64(h ^ packed) + 0x9e3779b97f4a7c15ULL;
  }
  return static_cast<std::size_t>(h);
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    skip_ws();
    if (peek() == 'e') {
      ++pos_;
      skip_ws();
      expect_end();
      return Word{};
    }
    Word::Storage raw;
    raw.push_back(term());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      skip_ws();
      raw.push_back(term());
      skip_ws();
    }
    expect_end();
    return Word::from_syllables({raw.data(), raw.size()});
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect_end() {
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
  }

  Syllable term() {
    if (peek() != 'g') {
      throw ParseError("expected 'g' or 'e'", pos_);
    }
    ++pos_;
    skip_ws();
    const std::size_t index_pos = pos_;
    const std::int64_t index = integer(false);
    if (index == 0) {
      throw ParseError("generator index 0 is not allowed", index_pos);
    }
    if (index > std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError("generator index out of range", index_pos);
    }
    std::int64_t exponent = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t exp_pos = pos_;
      exponent = integer(true);
      if (exponent == 0) {
        throw ParseError("exponent must be nonzero", exp_pos);
      }
      if (exponent > std::numeric_limits<std::int32_t>::max() ||
          exponent < std::numeric_limits<std::int32_t>::min()) {
        throw ParseError("exponent out of range", exp_pos);
      }
    }
    return {static_cast<std::uint32_t>(index), static_cast<std::int32_t>(exponent)};
  }

  std::int64_t integer(bool allow_sign) {
    const std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && (peek() == '-' || peek() == '+')) {
      negative = peek() == '-';
      ++pos_;
      skip_ws();
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (digits == pos_) {
      throw ParseError("expected integer", start);
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      throw ParseError("integer out of range", digits);
    }
    return negative ? -value : value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string format(const Word& w) {
  if (w.is_identity()) {
    return "e";
  }
  std::string out;
  for (const Syllable& s : w.syllables()) {
    if (!out.empty()) {
      out += '*';
    }
    out += 'g';
    out += std::to_string(s.generator);
    if (s.exponent != 1) {
      out += '^';
      out += std::to_string(s.exponent);
    }
  }
  return out;
}

WordTuple::WordTuple(std::size_t arity) : components_(arity) {
  if (arity == 0) {
    throw std::invalid_argument("word tuple arity must be at least 1");
  }
}

WordTuple::WordTuple(std::initializer_list<Word> components) : components_(components) {
  if (components_.empty()) {
    throw std::invalid_argument("word tuple arity must be at least 1");
  }
}

WordTuple::WordTuple(std::vector<Word> components)
    : components_(std::make_move_iterator(components.begin()),
                  std::make_move_iterator(components.end())) {
  if (components_.empty()) {
    throw std::invalid_argument("word tuple arity must be at least 1");
  }
}

bool WordTuple::is_identity() const noexcept {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Word& w) { return w.is_identity(); });
}

WordTuple WordTuple::inverse() const {
  WordTuple t = *this;
  for (Word& w : t.components_) {
    w = w.inverse();
  }
  return t;
}

WordTuple& WordTuple::operator*=(const WordTuple& rhs) {
  if (rhs.arity() != arity()) {
    throw std::invalid_argument("word tuple arity mismatch");
  }
  for (std::size_t j = 0; j < components_.size(); ++j) {
    components_[j] *= rhs.components_[j];
  }
  return *this;
}

std::strong_ordering operator<=>(const WordTuple& a, const WordTuple& b) noexcept {
  return std::lexicographical_compare_three_way(a.components_.begin(), a.components_.end(),
                                                b.components_.begin(), b.components_.end());
}

std::size_t WordTuple::hash() const noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL ^ components_.size();
  for (const Word& w : components_) {
    h = mix64(h ^ w.hash()) + 0x9e3779b97f4a7c15ULL;
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::size_t> multi_length(const WordTuple& t) {
  std::vector<std::size_t> m;
  m.reserve(t.arity());
  for (const Word& w : t.components()) {
    m.push_back(w.length());
  }
  return m;
}

std::string format(const WordTuple& t) {
  std::string out = "(";
  for (std::size_t j = 0; j < t.arity(); ++j) {
    if (j) {
      out += ", ";
    }
    out += format(t[j]);
  }
  out += ')';
  return out;
}

WordTuple parse_tuple(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size() && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  if (begin == text.size() || text[begin] != '(') {
    return WordTuple{parse_word(text)};
  }
  const std::size_t close = text.rfind(')');
  if (close == std::string_view::npos || close < begin) {
    throw ParseError("missing ')'", text.size());
  }
  for (std::size_t i = close + 1; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError("unexpected character after ')'", i);
    }
  }
  std::vector<Word> parts;
  std::size_t start = begin + 1;
  for (std::size_t i = start; i <= close; ++i) {
    if (i == close || text[i] == ',') {
      try {
        parts.push_back(parse_word(text.substr(start, i - start)));
      } catch (const ParseError& err) {
        throw ParseError("invalid tuple component", start + err.position());
      }
      start = i + 1;
    }
  }
  return WordTuple(std::move(parts));
}

}  // namespace freemoe
