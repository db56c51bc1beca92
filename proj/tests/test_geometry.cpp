#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "horowitz/geometry.hpp"
#include "horowitz/hempel.hpp"

using namespace horowitz;

namespace {

CurveClass C(char const* s) {
  return canonical_class(parse_word(s, 2));
}

}  // namespace

// ---- exact quadratic arithmetic ------------------------------------------

TEST(QuadField, SignAgreesWithFloatingPoint) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> n(-40, 40), d(1, 30);
  QuadQ r = QuadQ::sqrt_of(Rational(7));
  for (int i = 0; i < 2000; ++i) {
    QuadQ v = QuadQ(make_rational(n(gen), d(gen))) + QuadQ(make_rational(n(gen), d(gen))) * r;
    long double approx = approximate(v);
    if (std::fabs(approx) < 1e-12L) continue;
    EXPECT_EQ(v.sign(), approx > 0 ? 1 : -1) << approx;
  }
}

TEST(QuadField, ExactZeroAndSquares) {
  QuadQ s = QuadQ::sqrt_of(Rational(2));
  EXPECT_EQ(s * s, QuadQ(2));
  EXPECT_EQ((s * s - QuadQ(2)).sign(), 0);
  // 3 - 2√2 > 0 but tiny relative to its parts
  EXPECT_EQ((QuadQ(3) - QuadQ(2) * s).sign(), 1);
  EXPECT_EQ((QuadQ(Rational(99, 70)) - s).sign(), 1);
  EXPECT_EQ((QuadQ(Rational(140, 99)) - s).sign(), -1);
  EXPECT_THROW(QuadQ::sqrt_of(Rational(-1)), DomainError);
}

TEST(QuadField, MixingExtensionsRejected) {
  QuadQ s2 = QuadQ::sqrt_of(Rational(2));
  QuadQ s3 = QuadQ::sqrt_of(Rational(3));
  EXPECT_THROW(s2 + s3, Error);
  // Equal radicands from separate constructions are compatible.
  EXPECT_EQ(s2 + QuadQ::sqrt_of(Rational(2)), QuadQ(2) * s2);
}

TEST(QuadField, TowerSign) {
  // √(3 + √2) ≈ 2.1010
  QuadQ inner = QuadQ(3) + QuadQ::sqrt_of(Rational(2));
  Tower2 r = Tower2::sqrt_of(inner);
  EXPECT_EQ((r - Tower2(QuadQ(2))).sign(), 1);
  EXPECT_EQ((r - Tower2(QuadQ(Rational(21, 10)))).sign(), 1);
  EXPECT_EQ((r - Tower2(QuadQ(Rational(211, 100)))).sign(), -1);
  EXPECT_EQ(r * r, Tower2(inner));
  EXPECT_NEAR(static_cast<double>(approximate(r)), std::sqrt(3 + std::sqrt(2.0)), 1e-12);
}

TEST(PreciseValue, SurvivesCancellation) {
  // 1e6 - √(1e12 - 1) ≈ 5e-7
  QuadQ v = QuadQ(Rational(1000000)) - QuadQ::sqrt_of(Rational("999999999999"));
  long double exact = 1.0L / (1e6L + std::sqrt(999999999999.0L));
  EXPECT_NEAR(static_cast<double>(precise_value(v) / exact), 1.0, 1e-15);
}

// ---- lengths ------------------------------------------------------------

TEST(RealLength, Examples) {
  EXPECT_EQ(real_length_from_trace(2.0L), 0.0L);
  EXPECT_EQ(real_length_from_trace(-2.0L), 0.0L);
  EXPECT_NEAR(static_cast<double>(real_length_from_trace(3.0L)), 2 * std::acosh(1.5), 1e-15);
  EXPECT_NEAR(static_cast<double>(real_length_from_trace(3.0L)), 1.924847, 1e-6);
  EXPECT_EQ(real_length_from_trace(-3.0L), real_length_from_trace(3.0L));
  EXPECT_THROW(real_length_from_trace(1.5L), NotHyperbolicError);
}

TEST(RealLength, NearTwoAsymptotics) {
  for (long double e : {1e-4L, 1e-8L, 1e-12L}) {
    long double l = real_length_from_trace(2.0L + e);
    EXPECT_NEAR(static_cast<double>(l / (2.0L * std::sqrt(e))), 1.0, 1e-3);
  }
}

TEST(ComplexLength, Examples) {
  EXPECT_NEAR(complex_length_from_trace({3.0, 0.0}), 2 * std::acosh(1.5), 1e-12);
  // Eigenvalue of trace 2i: i(1 + √2); modulus e^{l/2}.
  double l = complex_length_from_trace({0.0, 2.0});
  EXPECT_NEAR(l, 2 * std::log(1 + std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(complex_length_from_trace({2.0001, 0.0}), 0.02, 1e-5);
  EXPECT_THROW(complex_length_from_trace({1.0, 0.0}), NotHyperbolicError);
}

TEST(ComplexLength, EigenvalueOracle) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 200; ++i) {
    std::complex<double> t(u(gen), u(gen));
    if (std::abs(t.imag()) < 1e-3) continue;
    std::complex<double> lam = (t + std::sqrt(t * t - 4.0)) / 2.0;
    double expected = 2 * std::abs(std::log(std::abs(lam)));
    EXPECT_NEAR(complex_length_from_trace(t), expected, 1e-9 * (1 + expected));
  }
}

// ---- structures -----------------------------------------------------------

TEST(Structure, ThreeThreeSix) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(3));
  ASSERT_TRUE(s.z_rational);
  EXPECT_EQ(*s.z_rational, 6);
  EXPECT_EQ(s.markov_residual, 0.0L);
  EXPECT_EQ(s.label(), "(3,3,6)");
}

TEST(Structure, SmallerRoot) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(3), RootChoice::Smaller);
  EXPECT_EQ(*s.z_rational, 3);
  EXPECT_EQ(commutator_trace(s), QuadQ(-2));
}

TEST(Structure, IrrationalZIsExactlyMarkov) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(4));
  EXPECT_FALSE(s.z_rational);
  EXPECT_EQ(commutator_trace(s), QuadQ(-2));
  EXPECT_EQ(s.markov_residual, 0.0L);
  EXPECT_NEAR(static_cast<double>(s.zd), (12 + std::sqrt(144.0 - 36 - 64)) / 2, 1e-12);
}

TEST(Structure, InadmissibleTraces) {
  EXPECT_THROW(punctured_torus_structure(2.5, 3.0), DomainError);
  EXPECT_NO_THROW(punctured_torus_structure(Rational(5, 2), Rational(10, 3)));
  EXPECT_THROW(punctured_torus_structure(Rational(2), Rational(5)), DomainError);
  EXPECT_NEAR(minimal_admissible_y(2.5), 10.0 / 3, 1e-12);
}

TEST(CurveLength, Examples) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(3));
  EXPECT_NEAR(static_cast<double>(curve_length(s, C("a")).length), 2 * std::acosh(1.5), 1e-15);
  EXPECT_NEAR(static_cast<double>(curve_length(s, C("ab")).length), 2 * std::acosh(3.0), 1e-15);
  CurveLength per = curve_length(s, C("abAB"));
  EXPECT_TRUE(per.peripheral);
  EXPECT_EQ(per.length, 0.0L);
  EXPECT_NEAR(static_cast<double>(per.trace), -2.0, 1e-15);
}

TEST(CurveLength, MatchesFloatingEvaluation) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(10));
  for (auto const& c : enumerate_classes(6, 2)) {
    if (is_peripheral(c)) continue;
    long double t = fricke_char(c).evaluate<long double>(s.xd, s.yd, s.zd);
    EXPECT_NEAR(static_cast<double>(curve_length(s, c).length),
                static_cast<double>(real_length_from_trace(t)), 1e-9)
        << to_string(c);
  }
}

TEST(CurveLength, EveryNonPeripheralClassIsHyperbolic) {
  for (auto [x, y] : {std::pair{3, 3}, {3, 4}, {4, 4}, {3, 10}}) {
    FrickeTriple s = punctured_torus_structure(Rational(x), Rational(y));
    for (auto const& c : enumerate_classes(7, 2)) {
      if (!is_peripheral(c)) {
        EXPECT_GT(curve_length(s, c).length, 0.0L) << to_string(c);
      }
    }
  }
}

// ---- collar ---------------------------------------------------------------

TEST(Collar, Boundary) {
  long double l = 2 * std::asinh(1.0L);
  EXPECT_NEAR(static_cast<double>(collar_product(l, l)), 1.0, 1e-15);
  EXPECT_FALSE(collar_check(l, l));
  EXPECT_THROW(collar_product(0, 1), DomainError);
}

TEST(Collar, GeneratorsAtThreeThreeSix) {
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(3));
  long double la = curve_length(s, C("a")).length, lb = curve_length(s, C("b")).length;
  EXPECT_NEAR(static_cast<double>(collar_product(la, lb)), 1.25, 1e-12);
  EXPECT_TRUE(collar_check(la, lb));
}

TEST(Collar, ShortCurveProductVanishes) {
  EXPECT_LT(collar_product(1e-8L, 3.0L), 1e-7L);
  EXPECT_FALSE(collar_check(1e-8L, 3.0L));
}

// ---- pinching -------------------------------------------------------------

TEST(Pinching, ReferenceSchedule) {
  PinchingSchedule sch = reference_schedule();
  ASSERT_EQ(sch.steps.size(), 10u);
  EXPECT_EQ(sch.steps[0].x, Rational(9, 4));
  LengthReport rep = pinching_experiment(sch);
  EXPECT_TRUE(rep.pinched_strictly_decreasing);
  EXPECT_LT(rep.pinched_final, 5e-3L);
  // b crosses a once: its length grows without bound.
  long double prev = 0;
  for (auto const& st : rep.steps) {
    ASSERT_EQ(st.samples[1].curve, "b");
    EXPECT_GT(st.samples[1].length, prev);
    prev = st.samples[1].length;
  }
  EXPECT_GT(rep.probe_min.at(to_string(C("abaaB"))), 0.0L);
}

TEST(Pinching, CsvShape) {
  PinchingSchedule sch = reference_schedule(3);
  std::string csv = pinching_experiment(sch).to_csv();
  EXPECT_EQ(csv.rfind("step,x,y,z,curve,trace,length\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 3);
}

TEST(Pinching, EmptyScheduleRejected) {
  PinchingSchedule sch;
  EXPECT_THROW(pinching_experiment(sch), DomainError);
}

TEST(Pinching, SimpleCurvesGetShortNonSimpleDoNot) {
  // Contrast case: along the schedule the simple curve a goes to 0 while
  // every non-simple class of length <= 6 stays bounded below.
  PinchingSchedule sch = reference_schedule();
  sch.probes = non_simple_classes(6);
  LengthReport rep = pinching_experiment(sch);
  long double lo = std::numeric_limits<long double>::infinity();
  for (auto const& [name, v] : rep.probe_min) lo = std::min(lo, v);
  EXPECT_LT(rep.pinched_final, 5e-3L);
  EXPECT_GT(lo, 1.0L);
}

// ---- hempel -----------------------------------------------------------------

TEST(Hempel, ReferenceGrid) {
  HempelScanConfig cfg{6, {{3, 3}, {3, 4}, {4, 4}, {3, 10}}, std::nullopt};
  HempelResult r = hempel_scan(cfg);
  ASSERT_TRUE(cfg.observed_min);
  EXPECT_GT(*cfg.observed_min, 0.0L);
  EXPECT_EQ(r.structures, 4u);
  EXPECT_GT(r.non_simple_classes, 0u);
}

TEST(Hempel, SingleStructureBoundedByKnownClass) {
  HempelScanConfig cfg{5, {{3, 3}}, std::nullopt};
  HempelResult r = hempel_scan(cfg);
  FrickeTriple s = punctured_torus_structure(Rational(3), Rational(3));
  EXPECT_LE(r.observed_min, curve_length(s, C("abaaB")).length);
}

TEST(Hempel, Errors) {
  HempelScanConfig empty{8, {}, std::nullopt};
  EXPECT_THROW(hempel_scan(empty), DomainError);
  HempelScanConfig shortlen{4, {{3, 3}}, std::nullopt};
  EXPECT_THROW(hempel_scan(shortlen), DomainError);
}
