#include <gtest/gtest.h>

#include <random>
#include <string>
#include <thread>
#include <vector>

#include "horowitz/traces.hpp"

using namespace horowitz;

namespace {

Word W(char const* s) {
  return parse_word(s, 2);
}

CurveClass C(char const* s) {
  return canonical_class(W(s));
}

// Random SL2(Q) matrix: [[p, q], [r, (1 + q r)/p]] with small nonzero p.
Mat2<Rational> random_sl2q(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto q = [&] { return make_rational(num(gen), den(gen)); };
  Rational p;
  do p = q();
  while (p == 0);
  Rational b = q(), c = q();
  Rational d = (1 + b * c) / p;
  return {p, b, c, d};
}

// The trace of the explicit matrix product versus the polynomial at
// (tr A, tr B, tr AB).
void expect_char_matches_matrices(Word const& w, int reps, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  FrickePolynomial p = fricke_char(w);
  for (int i = 0; i < reps; ++i) {
    Representation<Rational> rho({random_sl2q(gen), random_sl2q(gen)});
    Rational x = rho.trace(W("a")), y = rho.trace(W("b")), z = rho.trace(W("ab"));
    ASSERT_EQ(p.evaluate<Rational>(x, y, z), rho.trace(w)) << to_string(w);
  }
}

}  // namespace

TEST(FrickeChar, Examples) {
  EXPECT_EQ(fricke_char(W("a")).to_string(), "x");
  EXPECT_EQ(fricke_char(W("b")).to_string(), "y");
  EXPECT_EQ(fricke_char(W("ab")).to_string(), "z");
  EXPECT_EQ(fricke_char(W("aB")).to_string(), "x*y - z");
  EXPECT_EQ(fricke_char(W("abAB")).to_string(), "-x*y*z + x^2 + y^2 + z^2 - 2");
  EXPECT_EQ(fricke_char(Word(2)).to_string(), "2");
}

TEST(FrickeChar, HorowitzPair) {
  EXPECT_EQ(fricke_char(W("abaaB")).to_string(), "x^2*y*z - x*y^2 - x*z^2 + x");
  EXPECT_TRUE(chars_equal_exact(C("abaaB"), C("aabaB")));
  EXPECT_NE(C("abaaB"), C("aabaB"));
}

TEST(FrickeChar, DistinctGenerators) {
  EXPECT_FALSE(chars_equal_exact(C("a"), C("b")));
}

TEST(FrickeChar, ExamplesAgreeWithMatrixTraces) {
  for (char const* s : {"a", "aB", "abAB", "abaaB", "aabaB", "aabb", "abABB", "aaaBBabAb"}) {
    expect_char_matches_matrices(W(s), 100, 42);
  }
}

TEST(FrickeChar, AllShortWordsAgreeWithMatrixTraces) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::uint64_t seed = n;
    for_each_reduced_word(n, 2, [&](Word const& w) { expect_char_matches_matrices(w, 5, seed++); });
  }
}

TEST(FrickeChar, ConjugationAndInversionInvariant) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> d(0, 3);
  for (int i = 0; i < 200; ++i) {
    Letters l, g;
    for (int k = 0; k < 1 + i % 10; ++k) l.push_back(Letter::from_code(static_cast<std::uint8_t>(d(gen))));
    for (int k = 0; k < i % 5; ++k) g.push_back(Letter::from_code(static_cast<std::uint8_t>(d(gen))));
    Word w(l, 2), h(g, 2);
    EXPECT_EQ(fricke_char(h * w * invert(h)), fricke_char(w));
    EXPECT_EQ(fricke_char(invert(w)), fricke_char(w));
  }
}

TEST(FrickeChar, ReversalIdentityUpToLengthEight) {
  for_each_class(8, 2, [](CurveClass const& c) {
    ASSERT_EQ(fricke_char(c.word()), fricke_char(reverse(c.word()))) << to_string(c);
  });
}

TEST(FrickeChar, RankMustBeTwo) {
  EXPECT_THROW(fricke_char(parse_word("abc", 3)), DomainError);
}

TEST(FrickeChar, ParallelEnginesAgree) {
  auto classes = enumerate_classes(8, 2);
  FrickeEngine serial;
  std::vector<std::string> expected;
  for (auto const& c : classes) expected.push_back(serial.character(c).to_string());

  FrickeEngine shared;
  std::vector<std::string> got(classes.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      // Workers walk the list in different orders to race on the memo table.
      for (std::size_t k = 0; k < classes.size(); ++k) {
        std::size_t i = t % 2 ? classes.size() - 1 - k : k;
        got[i] = shared.character(classes[i]).to_string();
      }
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(got, expected);
  EXPECT_EQ(shared.memo_size(), serial.memo_size());
}

TEST(Probabilistic, DistinctGeneratorsGiveWitness) {
  auto v = chars_equal_probabilistic(W("a"), W("b"), 2, 50, 1);
  ASSERT_TRUE(v.distinct());
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->trace(W("a")), v.trace_u);
  EXPECT_EQ(v.witness->trace(W("b")), v.trace_v);
  EXPECT_NE(v.trace_u, v.trace_v);
}

TEST(Probabilistic, ConjugatesProbablyEqualInAnyRank) {
  Word w = parse_word("abcAb", 3);
  Word g = parse_word("cab", 3);
  auto v = chars_equal_probabilistic(w, g * w * invert(g), 3, 30, 5);
  EXPECT_FALSE(v.distinct());
  EXPECT_EQ(v.trials, 30);
}

TEST(Probabilistic, HorowitzPairProbablyEqual) {
  EXPECT_FALSE(chars_equal_probabilistic(W("abaaB"), W("aabaB"), 2, 50, 9).distinct());
}

TEST(Probabilistic, SeedReplays) {
  auto v1 = chars_equal_probabilistic(W("ab"), W("aB"), 2, 50, 77);
  auto v2 = chars_equal_probabilistic(W("ab"), W("aB"), 2, 50, 77);
  ASSERT_TRUE(v1.distinct());
  EXPECT_EQ(v1.trials, v2.trials);
  EXPECT_EQ(v1.trace_u, v2.trace_u);
  EXPECT_EQ(v1.witness->generators(), v2.witness->generators());
}

TEST(Probabilistic, NeverContradictsExact) {
  auto classes = enumerate_classes(6, 2);
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  for (int i = 0; i < 200; ++i) {
    CurveClass const& u = classes[pick(gen)];
    CurveClass const& v = classes[pick(gen)];
    auto pv = chars_equal_probabilistic(u.word(), v.word(), 2, 10, gen());
    if (chars_equal_exact(u, v)) {
      EXPECT_FALSE(pv.distinct());
    }
  }
}

TEST(Probabilistic, Errors) {
  EXPECT_THROW(chars_equal_probabilistic(W("a"), W("b"), 2, 0, 1), DomainError);
  EXPECT_THROW(chars_equal_probabilistic(parse_word("c", 3), W("b"), 2, 5, 1), DomainError);
}

TEST(RandomUnimodular, DeterminantOne) {
  Rng rng(123);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(random_unimodular(rng).det(), 1);
}

TEST(HorowitzFamily, ZeroTCommutes) {
  Rational l(2), m(3);
  auto rho = horowitz_rep(HorowitzFamilyPoint<Rational>{l, m, Rational(0)});
  EXPECT_EQ(rho.trace(W("ab")), l * m + 1 / (l * m));
  EXPECT_EQ(rho.evaluate(W("ab")), rho.evaluate(W("ba")));
}

TEST(HorowitzFamily, ForbiddenParameters) {
  EXPECT_THROW(horowitz_rep(HorowitzFamilyPoint<Rational>{Rational(1), Rational(2), Rational(1)}),
               DomainError);
  EXPECT_THROW(trace_poly_in_T(W("ab"), Rational(-1), Rational(2)), DomainError);
  EXPECT_THROW(trace_poly_in_T(W("ab"), Rational(2), Rational(0)), DomainError);
}

TEST(HorowitzFamily, TracePolyMatchesSpecializations) {
  Rational l(3, 2), m(5, 3);
  for (char const* s : {"ab", "abaaB", "aaBBaBBB", "abAB"}) {
    TPoly p = trace_poly_in_T(W(s), l, m);
    for (int t = -3; t <= 3; ++t) {
      auto rho = horowitz_rep(HorowitzFamilyPoint<Rational>{l, m, make_rational(t, 2)});
      EXPECT_EQ(p.evaluate(make_rational(t, 2)), rho.trace(W(s))) << s << " T=" << t;
    }
  }
}

TEST(LeadingCoefficient, Examples) {
  EXPECT_EQ(leading_coeff_formula({1}, {1}, Rational(3, 2), Rational(5, 3)), 1);
  EXPECT_EQ(leading_coeff_formula({2}, {1}, Rational(2), Rational(5, 3)), Rational(5, 2));
  EXPECT_THROW(leading_coeff_formula({1, 2}, {1}, Rational(2), Rational(3)), DomainError);
  EXPECT_THROW(leading_coeff_formula({0}, {1}, Rational(2), Rational(3)), DomainError);
}

TEST(LeadingCoefficient, MatchesTopCoefficient) {
  Rational l(3, 2), m(5, 3);
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> e(-3, 2), plen(1, 3);
  for (int i = 0; i < 50; ++i) {
    std::vector<int> mv, nv;
    int p = plen(gen);
    for (int k = 0; k < p; ++k) {
      int a = e(gen), b = e(gen);
      mv.push_back(a >= 0 ? a + 1 : a);
      nv.push_back(b >= 0 ? b + 1 : b);
    }
    TPoly poly = trace_poly_in_T(word_from_exponents(mv, nv), l, m);
    ASSERT_EQ(poly.degree(), 2 * p);
    EXPECT_EQ(poly.coefficient(2 * p),
              leading_coeff_formula(mv, nv, l, m));
  }
}
