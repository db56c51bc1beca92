#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "horowitz/words.hpp"

using namespace horowitz;

namespace {

Word W(char const* s) {
  return parse_word(s, 2);
}

CurveClass C(char const* s) {
  return canonical_class(W(s));
}

// Letters in code order a < A < b < B.
Letters random_letters(std::mt19937_64& gen, std::size_t len, int rank = 2) {
  std::uniform_int_distribution<int> d(0, 2 * rank - 1);
  Letters out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(Letter::from_code(static_cast<std::uint8_t>(d(gen))));
  return out;
}

Word random_reduced(std::mt19937_64& gen, std::size_t len) {
  Letters l;
  std::uniform_int_distribution<int> d(0, 3);
  while (l.size() < len) {
    Letter x = Letter::from_code(static_cast<std::uint8_t>(d(gen)));
    if (!l.empty() && l.back() == x.inverse()) continue;
    l.push_back(x);
  }
  return Word(l, 2);
}

// Oracle: minimum over all explicit rotations of s and of s^{-1}.
Letters naive_canonical(Letters const& s) {
  Letters inv(s.rbegin(), s.rend());
  for (auto& l : inv) l = l.inverse();
  Letters best;
  for (Letters const* src : std::array<Letters const*, 2>{&s, &inv}) {
    for (std::size_t r = 0; r < src->size(); ++r) {
      Letters rot;
      for (std::size_t i = 0; i < src->size(); ++i) rot.push_back((*src)[(r + i) % src->size()]);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

// Oracle: all 4^n strings, cyclically reduced, non-powers, deduplicated.
std::size_t brute_count(std::size_t n) {
  std::set<Letters> seen;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Letters s;
    for (std::size_t i = 0, c = code; i < n; ++i, c /= 4) {
      s.push_back(Letter::from_code(static_cast<std::uint8_t>(c % 4)));
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i) ok = ok && s[i + 1] != s[i].inverse();
    if (n > 1) ok = ok && s.front() != s.back().inverse();
    if (!ok) continue;
    bool power = false;
    for (std::size_t k = 1; k < n && !power; ++k) {
      if (n % k) continue;
      bool periodic = true;
      for (std::size_t i = 0; i < n; ++i) periodic = periodic && s[i] == s[(i + k) % n];
      power = periodic;
    }
    if (!power) seen.insert(naive_canonical(s));
  }
  return seen.size();
}

}  // namespace

TEST(ParseWord, FreeCancellation) {
  EXPECT_EQ(to_string(parse_word("aA b", 2)), "b");
}

TEST(ParseWord, ExponentToken) {
  Word w = parse_word("a^2 B", 2);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], Letter(0, 1));
  EXPECT_EQ(w[1], Letter(0, 1));
  EXPECT_EQ(w[2], Letter(1, -1));
}

TEST(ParseWord, HorowitzWord) {
  Word w = W("abaaB");
  EXPECT_EQ(to_string(w), "aba^2B");
  EXPECT_EQ(w, word_from_exponents(std::vector<int>{1, 2}, std::vector<int>{1, -1}));
}

TEST(ParseWord, NegativeExponentsAndZero) {
  EXPECT_EQ(parse_word("a^-1", 2), parse_word("A", 2));
  EXPECT_EQ(parse_word("b^-2a", 2), parse_word("BBa", 2));
  EXPECT_EQ(parse_word("a^0 b", 2), parse_word("b", 2));
}

TEST(ParseWord, Errors) {
  EXPECT_THROW(parse_word("abc", 2), ParseError);
  EXPECT_THROW(parse_word("a1", 2), ParseError);
  EXPECT_THROW(parse_word("a^", 2), ParseError);
  EXPECT_THROW(parse_word("?", 2), ParseError);
  EXPECT_THROW(canonical_class(parse_word("aA", 2)), DomainError);
}

TEST(ParseWord, RenderingRoundTrips) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 500; ++i) {
    Word w = random_reduced(gen, 1 + gen() % 12);
    EXPECT_EQ(parse_word(to_string(w), 2), w) << to_string(w);
  }
  EXPECT_EQ(to_string(parse_word("aabBBB", 2)), "a^2B^2");
  EXPECT_EQ(to_string(parse_word("abBBB", 2)), "aB^2");
  EXPECT_EQ(to_string(Word(2)), "1");
}

TEST(FreeReduction, IdempotentAndOrderIndependent) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    Letters raw = random_letters(gen, 2 + gen() % 14);
    Word stack(raw, 2);
    // Cancel adjacent inverse pairs in a random order until none remain.
    Letters s = raw;
    for (;;) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] == s[i].inverse()) spots.push_back(i);
      }
      if (spots.empty()) break;
      std::size_t pick = spots[gen() % spots.size()];
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(pick),
              s.begin() + static_cast<std::ptrdiff_t>(pick) + 2);
    }
    EXPECT_EQ(Letters(stack.letters().begin(), stack.letters().end()), s);
    EXPECT_EQ(Word(stack.letters(), 2), stack);
  }
}

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(W("abaaB")), W("Baaba"));
  EXPECT_EQ(reverse(W("a")), W("a"));
  EXPECT_EQ(reverse(W("ab")), W("ba"));
}

TEST(Reverse, InvolutionCommutingWithInverse) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 300; ++i) {
    Word w = random_reduced(gen, gen() % 12);
    EXPECT_EQ(reverse(reverse(w)), w);
    EXPECT_EQ(reverse(invert(w)), invert(reverse(w)));
  }
}

TEST(CanonicalClass, RotationAndInverse) {
  EXPECT_EQ(C("baaBa"), C("abaaB"));
  EXPECT_EQ(C("bAABA"), C("abaaB"));
  EXPECT_NE(C("aabaB"), C("abaaB"));
}

TEST(CanonicalClass, InvariantUnderConjugationAndInversion) {
  std::mt19937_64 gen(5);
  for (std::size_t len = 1; len <= 8; ++len) {
    for (int i = 0; i < 40; ++i) {
      Word w = random_reduced(gen, len);
      auto cw = try_cyclic_reduce(w);
      if (!cw || is_proper_power(*cw).is_power) continue;
      CurveClass base = canonical_class(w);
      Word g = random_reduced(gen, gen() % 7);
      EXPECT_EQ(canonical_class(g * w * invert(g)), base) << to_string(w);
      EXPECT_EQ(canonical_class(invert(w)), base);
    }
  }
}

TEST(CanonicalClass, BoothMatchesNaiveMinimum) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 2000; ++i) {
    Letters s = random_letters(gen, 1 + gen() % 12);
    Word w(s, 2);
    auto cw = try_cyclic_reduce(w);
    if (!cw) continue;
    Letters raw(cw->letters().begin(), cw->letters().end());
    EXPECT_EQ(detail::canonical_cyclic(raw), naive_canonical(raw));
  }
}

TEST(CanonicalClass, ProperPowerReportsRoot) {
  try {
    canonical_class(W("abab"));
    FAIL() << "expected ProperPowerError";
  } catch (ProperPowerError const& e) {
    EXPECT_EQ(e.exponent(), 2);
    EXPECT_EQ(to_string(e.root()), "ab");
  }
}

TEST(ProperPower, Examples) {
  auto p = is_proper_power(cyclic_reduce(W("aa")));
  EXPECT_TRUE(p.is_power);
  EXPECT_EQ(to_string(*p.root), "a");
  EXPECT_EQ(p.exponent, 2);
  auto q = is_proper_power(cyclic_reduce(W("abab")));
  EXPECT_TRUE(q.is_power);
  EXPECT_EQ(to_string(*q.root), "ab");
  EXPECT_EQ(q.exponent, 2);
  EXPECT_FALSE(is_proper_power(cyclic_reduce(W("abaaB"))).is_power);
}

TEST(CyclicWord, RejectsNonCyclicallyReduced) {
  Word w = W("abA");
  EXPECT_THROW(CyclicWord(w.letters(), 2), DomainError);
  EXPECT_EQ(to_string(cyclic_reduce(w)), "b");
}

TEST(Syllables, ExponentVectors) {
  auto ev = exponent_vectors(cyclic_reduce(W("abaaB")));
  ASSERT_TRUE(ev);
  EXPECT_EQ(ev->m, (std::vector<int>{1, 2}));
  EXPECT_EQ(ev->n, (std::vector<int>{1, -1}));
  auto ab = exponent_vectors(cyclic_reduce(W("ab")));
  ASSERT_TRUE(ab);
  EXPECT_EQ(ab->m, std::vector<int>{1});
  EXPECT_EQ(ab->n, std::vector<int>{1});
  EXPECT_FALSE(exponent_vectors(cyclic_reduce(W("aaa"))).has_value());
}

TEST(Syllables, ReconstructionIsARotation) {
  std::mt19937_64 gen(13);
  for (int i = 0; i < 300; ++i) {
    auto cw = try_cyclic_reduce(random_reduced(gen, 2 + gen() % 10));
    if (!cw) continue;
    SyllableForm f = syllables(*cw);
    Letters rebuilt;
    for (auto const& s : f.syllables) {
      for (int k = 0; k < std::abs(s.exponent); ++k) rebuilt.emplace_back(s.generator, s.exponent);
    }
    Letters orig(cw->letters().begin(), cw->letters().end());
    bool rotation = false;
    for (std::size_t r = 0; r < orig.size() && !rotation; ++r) {
      rotation = detail::rotate_letters(orig, r) == rebuilt;
    }
    EXPECT_TRUE(rotation) << to_string(*cw);
    for (std::size_t k = 1; k < f.syllables.size(); ++k) {
      EXPECT_NE(f.syllables[k].generator, f.syllables[k - 1].generator);
      EXPECT_NE(f.syllables[k].exponent, 0);
    }
  }
}

TEST(Enumerate, SmallLengths) {
  auto one = enumerate_classes(1, 2);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(to_string(one[0]), "a");
  EXPECT_EQ(to_string(one[1]), "b");
  std::set<std::string> two;
  for (auto const& c : enumerate_classes(2, 2)) two.insert(to_string(c));
  EXPECT_EQ(two, (std::set<std::string>{"a", "b", "ab", "aB"}));
}

TEST(Enumerate, ContainsHorowitzWord) {
  auto all = enumerate_classes(5, 2);
  EXPECT_NE(std::find(all.begin(), all.end(), C("abaaB")), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), C("aabaB")), all.end());
}

TEST(Enumerate, CountsMatchBruteForce) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t fast = 0;
    for_each_class_of_length(n, 2, {}, [&](CurveClass const&) { ++fast; });
    EXPECT_EQ(fast, brute_count(n)) << "length " << n;
  }
}

TEST(Enumerate, EachClassOnceInOrder) {
  auto all = enumerate_classes(7, 2);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_TRUE(seen.insert(to_string(all[i])).second);
    EXPECT_EQ(canonical_class(all[i].word()), all[i]);
    if (i > 0) {
      EXPECT_LT(all[i - 1], all[i]);
    }
  }
}

TEST(Enumerate, PowersOnRequest) {
  std::size_t without = enumerate_classes(4, 2).size();
  std::size_t with = enumerate_classes(4, 2, EnumerationOptions{true}).size();
  // a^2, b^2, a^3, b^3, a^4, b^4, (ab)^2, (aB)^2
  EXPECT_EQ(with - without, 8u);
}

TEST(Enumerate, PrefixPartitionCoversEverything) {
  std::size_t whole = 0, parts = 0;
  for_each_class_of_length(6, 2, {}, [&](CurveClass const&) { ++whole; });
  for (int c0 = 0; c0 < 4; ++c0) {
    for (int c1 = 0; c1 < 4; ++c1) {
      if ((c0 ^ 1) == c1) continue;
      for_each_class_of_length(
          6, 2, {Letter::from_code(static_cast<std::uint8_t>(c0)), Letter::from_code(static_cast<std::uint8_t>(c1))},
          [&](CurveClass const&) { ++parts; });
    }
  }
  EXPECT_EQ(whole, parts);
}

TEST(Enumerate, HigherRank) {
  // Rank 3, length 1: a, b, c.
  EXPECT_EQ(enumerate_classes(1, 3).size(), 3u);
}
