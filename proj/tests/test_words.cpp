// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "freemoe/sampling.hpp"
#include "freemoe/word.hpp"
#include "oracles.hpp"

using namespace freemoe;

namespace {

Word w(const char* text) { return parse_word(text); }

// Draws a reduced word of length <= max_len by free reduction of random
// letters. Independent of random_word so both generators get exercised.
Word random_reduced(std::mt19937_64& rng, unsigned gens, unsigned max_len) {
  std::uniform_int_distribution<unsigned> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, static_cast<int>(gens));
  std::bernoulli_distribution sign(0.5);
  std::vector<Syllable> raw;
  const unsigned n = len(rng);
  for (unsigned i = 0; i < n; ++i) {
    raw.push_back({static_cast<std::uint32_t>(letter(rng)), sign(rng) ? 1 : -1});
  }
  return Word::from_syllables(raw);
}

}  // namespace

TEST(Words, MultiplyExamples) {
  EXPECT_TRUE((w("g1") * w("g1^-1")).is_identity());
  EXPECT_EQ(w("g1*g2") * w("g2^-1*g3"), w("g1*g3"));
  EXPECT_EQ(w("g1^2") * w("g1"), Word::generator(1, 3));
  EXPECT_EQ(format(w("g1^2") * w("g1")), "g1^3");
}

TEST(Words, InverseExamples) {
  EXPECT_TRUE(Word{}.inverse().is_identity());
  EXPECT_EQ(format(w("g1*g2^-1").inverse()), "g2*g1^-1");
  EXPECT_EQ(w("g1^3*g2").inverse().inverse(), w("g1^3*g2"));
}

TEST(Words, LengthExamples) {
  EXPECT_EQ(Word{}.length(), 0u);
  EXPECT_EQ(w("g1*g2^-2*g1").length(), 4u);
  EXPECT_EQ(multi_length(WordTuple{w("g1*g2"), Word{}}), (std::vector<std::size_t>{2, 0}));
}

TEST(Words, ParseExamples) {
  const Word a = w("g1*g2^-2");
  ASSERT_EQ(a.syllables().size(), 2u);
  EXPECT_EQ(a.syllables()[0], (Syllable{1, 1}));
  EXPECT_EQ(a.syllables()[1], (Syllable{2, -2}));
  EXPECT_TRUE(w("g1*g1^-1").is_identity());
  EXPECT_TRUE(w("e").is_identity());
  EXPECT_EQ(w("  g3 ^ 2 *g3* g12 "), Word::from_syllables(std::vector<Syllable>{{3, 3}, {12, 1}}));
  EXPECT_EQ(format(w("g1^1*g2^1")), "g1*g2");
  EXPECT_EQ(format(Word{}), "e");
}

TEST(Words, ParseErrors) {
  const auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_word(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(position_of("g0"), 1u);
  EXPECT_EQ(position_of("g1*x"), 3u);
  EXPECT_THROW(parse_word("g1^0"), ParseError);
  EXPECT_THROW(parse_word(""), ParseError);
  EXPECT_THROW(parse_word("g1*"), ParseError);
  EXPECT_THROW(parse_word("g"), ParseError);
  EXPECT_THROW(parse_word("e*g1"), ParseError);
  EXPECT_THROW(parse_word("g99999999999"), ParseError);
}

TEST(Words, ExponentOverflowThrows) {
  const Word big = Word::generator(1, std::numeric_limits<std::int32_t>::max());
  EXPECT_THROW(big * Word::generator(1), std::overflow_error);
  EXPECT_NO_THROW(big * Word::generator(1, -1));
}

TEST(Words, Tuples) {
  const WordTuple t = parse_tuple("(g1*g2, e)");
  EXPECT_EQ(t.arity(), 2u);
  EXPECT_EQ(format(t), "(g1*g2, e)");
  EXPECT_EQ(parse_tuple("g1").arity(), 1u);
  EXPECT_TRUE((t * t.inverse()).is_identity());
  EXPECT_THROW(t * WordTuple(3), std::invalid_argument);
  EXPECT_EQ(WordTuple(2), parse_tuple("(e, e)"));
}

TEST(Words, AgreesWithLetterOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Word u = random_reduced(rng, 3, 8);
    const Word v = random_reduced(rng, 3, 8);
    const auto lu = oracle::letters_of(u);
    const auto lv = oracle::letters_of(v);
    ASSERT_EQ(oracle::letters_of(u * v), oracle::concat(lu, lv));
    ASSERT_EQ(oracle::letters_of(u.inverse()), oracle::invert(lu));
    ASSERT_EQ(u.length(), lu.size());
  }
}

TEST(Words, GroupLawFuzz) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    const Word u = random_reduced(rng, 4, 10);
    const Word v = random_reduced(rng, 4, 10);
    const Word x = random_reduced(rng, 4, 10);
    ASSERT_EQ((u * v) * x, u * (v * x));
    ASSERT_EQ(u * Word{}, u);
    ASSERT_EQ(Word{} * u, u);
    ASSERT_EQ((u * v).inverse(), v.inverse() * u.inverse());
    ASSERT_TRUE((u * u.inverse()).is_identity());
    const std::size_t luv = (u * v).length();
    ASSERT_LE(luv, u.length() + v.length());
    ASSERT_EQ((u.length() + v.length() - luv) % 2, 0u);
    ASSERT_EQ(parse_word(format(u)), u);
  }
}

TEST(Words, RandomWordHasExactLength) {
  Rng rng(5);
  for (std::size_t len = 0; len < 12; ++len) {
    for (int i = 0; i < 50; ++i) {
      const Word u = random_word(rng, len, 3);
      ASSERT_EQ(u.length(), len);
      ASSERT_EQ(oracle::reduce(oracle::letters_of(u)).size(), len);
    }
  }
}

TEST(Words, HashAndOrderingAreStructural) {
  const Word a = w("g1*g2^2");
  const Word b = w("g1*g2*g2");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a <=> b, std::strong_ordering::equal);
  EXPECT_NE(a, w("g2^2*g1"));
}
