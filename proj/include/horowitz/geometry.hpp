// Length functions on the Fricke slice of the once-punctured torus:
// structures with tr a = x, tr b = y, tr ab = z satisfying
//   x^2 + y^2 + z^2 = x y z     (commutator trace -2).
// x and y are exact rationals; z lies in Q(sqrt(x^2 y^2 - 4x^2 - 4y^2)), so
// every trace is an exact quadratic irrational and only the final arccosh is
// approximate.

#ifndef HOROWITZ_GEOMETRY_HPP_
#define HOROWITZ_GEOMETRY_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/fricke_polynomial.hpp"
#include "horowitz/quadratic_field.hpp"
#include "horowitz/rational.hpp"
#include "horowitz/traces.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

using QuadQ = Quad<Rational>;

// Value of a + b sqrt(d) to long double precision, however much the two
// parts cancel.
inline long double precise_value(QuadQ const& v) {
  if (!v.radicand() || sgn(v.radical_part()) == 0) {
    return to_long_double(v.rational_part());
  }
  int s = v.sign();
  if (s == 0) return 0.0L;
  for (mp_bitcnt_t prec = 256;; prec *= 2) {
    mpf_class a(v.rational_part(), prec);
    mpf_class b(v.radical_part(), prec);
    mpf_class d(*v.radicand(), prec);
    mpf_class r(0, prec);
    mpf_sqrt(r.get_mpf_t(), d.get_mpf_t());
    mpf_class br(b * r, prec);
    mpf_class sum(a + br, prec);
    // Absolute error is a few ulps of the larger summand.
    long ea = 0, eb = 0, es = 0;
    mpf_get_d_2exp(&ea, a.get_mpf_t());
    mpf_get_d_2exp(&eb, br.get_mpf_t());
    mpf_get_d_2exp(&es, sum.get_mpf_t());
    long big = std::max(ea, eb);
    if (sgn(sum) == s && es > big - static_cast<long>(prec) + 80) {
      Rational q;
      mpq_set_f(q.get_mpq_t(), sum.get_mpf_t());
      return to_long_double(q);
    }
    if (prec > (1u << 20)) {
      throw Error("precision escalation did not converge");
    }
  }
}

////////////////////////////////////////////////////////////////////////////
// Trace -> length
////////////////////////////////////////////////////////////////////////////

// 2 arccosh(1 + u) for u >= 0, accurate for small u.
inline long double length_from_excess(long double u) {
  if (u < 0) throw DomainError("negative trace excess");
  return 2.0L * std::log1p(u + std::sqrt(u * (u + 2.0L)));
}

// 2 arccosh(|t|/2); 0 for parabolic |t| = 2.
inline long double real_length_from_trace(long double t) {
  long double a = std::fabs(t);
  if (a < 2.0L) {
    throw NotHyperbolicError("elliptic trace has no translation length", false);
  }
  return length_from_excess(a / 2.0L - 1.0L);
}

// 2 Re arccosh(t/2) for a loxodromic trace.
inline double complex_length_from_trace(std::complex<double> t) {
  if (t.imag() == 0.0 && std::fabs(t.real()) <= 2.0) {
    throw NotHyperbolicError("trace in [-2, 2] is not loxodromic", std::fabs(t.real()) == 2.0);
  }
  if (t.imag() == 0.0) {
    return static_cast<double>(real_length_from_trace(t.real()));
  }
  return 2.0 * std::acosh(t / 2.0).real();
}

////////////////////////////////////////////////////////////////////////////
// Fricke triples
////////////////////////////////////////////////////////////////////////////

enum class RootChoice { Larger, Smaller };

struct FrickeTriple {
  Rational x, y;
  QuadQ z;
  RootChoice root = RootChoice::Larger;
  std::optional<Rational> z_rational;  // when the discriminant is a square
  long double xd = 0, yd = 0, zd = 0;
  long double markov_residual = 0;  // x^2 + y^2 + z^2 - xyz, exact then rounded

  Rational discriminant() const {
    return x * x * y * y - 4 * x * x - 4 * y * y;
  }

  QuadQ evaluate(FrickePolynomial const& p) const {
    return p.evaluate<QuadQ>(QuadQ(x), QuadQ(y), z);
  }

  std::string label() const {
    std::ostringstream os;
    os << "(" << x.get_str() << "," << y.get_str() << ",";
    if (z_rational) {
      os << z_rational->get_str();
    } else {
      os.precision(12);
      os << static_cast<double>(zd);
    }
    os << ")";
    return os.str();
  }
};

// Smallest y admitting a real z for the given x > 2: 2x / sqrt(x^2 - 4).
inline double minimal_admissible_y(double x) {
  if (!(x > 2.0)) throw DomainError("x must exceed 2");
  return 2.0 * x / std::sqrt(x * x - 4.0);
}

inline FrickeTriple punctured_torus_structure(Rational const& x, Rational const& y,
                                              RootChoice root = RootChoice::Larger) {
  if (!(x > 2) || !(y > 2)) {
    throw DomainError("structure needs x > 2 and y > 2");
  }
  FrickeTriple t;
  t.x = x;
  t.y = y;
  t.root = root;
  Rational disc = t.discriminant();
  if (sgn(disc) < 0) {
    throw DomainError("x^2 y^2 - 4x^2 - 4y^2 < 0: no cusped structure with these traces");
  }
  Rational half(1, 2);
  QuadQ s = QuadQ::sqrt_of(disc);
  QuadQ h(Rational(x * y * half));
  t.z = root == RootChoice::Larger ? h + QuadQ(half) * s : h - QuadQ(half) * s;
  if (auto r = exact_sqrt(disc)) {
    t.z_rational = root == RootChoice::Larger ? Rational((x * y + *r) / 2)
                                              : Rational((x * y - *r) / 2);
  }
  t.xd = to_long_double(x);
  t.yd = to_long_double(y);
  t.zd = precise_value(t.z);
  QuadQ X(x), Y(y);
  QuadQ residual = X * X + Y * Y + t.z * t.z - X * Y * t.z;
  t.markov_residual = precise_value(residual);
  return t;
}

inline FrickeTriple punctured_torus_structure(double x, double y,
                                              RootChoice root = RootChoice::Larger) {
  return punctured_torus_structure(Rational(x), Rational(y), root);
}

// Commutator trace at the structure; -2 on the Markov slice.
inline QuadQ commutator_trace(FrickeTriple const& s) {
  static FrickePolynomial const comm =
      fricke_char(parse_word("abAB", 2));
  return s.evaluate(comm);
}

////////////////////////////////////////////////////////////////////////////
// Curve lengths
////////////////////////////////////////////////////////////////////////////

inline CurveClass commutator_class() {
  return canonical_class(parse_word("abAB", 2));
}

inline bool is_peripheral(CurveClass const& c) {
  return c.rank() == 2 && c == commutator_class();
}

struct CurveLength {
  long double length = 0;
  long double trace = 0;
  bool peripheral = false;
};

inline CurveLength curve_length(FrickeTriple const& s, CurveClass const& c) {
  if (c.rank() != 2) throw DomainError("curve lengths need a rank-2 class");
  CurveLength out;
  QuadQ t = s.evaluate(fricke_char(c));
  out.trace = precise_value(t);
  if (is_peripheral(c)) {
    out.peripheral = true;
    return out;
  }
  QuadQ abs_t = t.sign() < 0 ? -t : t;
  QuadQ excess = abs_t - QuadQ(2);
  if (excess.sign() < 0) {
    throw NotHyperbolicError("class " + to_string(c) + " is elliptic at " + s.label(), false);
  }
  // (|t| - 2) / 2
  out.length = length_from_excess(precise_value(excess) / 2.0L);
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Collar inequality
////////////////////////////////////////////////////////////////////////////

inline long double collar_product(long double l1, long double l2) {
  if (!(l1 > 0) || !(l2 > 0)) {
    throw DomainError("collar product needs positive lengths");
  }
  return std::sinh(l1 / 2) * std::sinh(l2 / 2);
}

inline constexpr long double kLengthTolerance = 1e-9L;

inline bool collar_check(long double l1, long double l2) {
  return collar_product(l1, l2) > 1.0L + kLengthTolerance;
}

////////////////////////////////////////////////////////////////////////////
// Pinching
////////////////////////////////////////////////////////////////////////////

struct PinchingStep {
  Rational x, y;
};

struct PinchingSchedule {
  std::vector<PinchingStep> steps;
  CurveClass pinched = canonical_class(parse_word("a", 2));
  std::vector<CurveClass> probes;
};

// x_n = 2 + 4^{-n}, y_n = 1.01 * minimal admissible y (rounded to the
// nearest double), n = 1..steps.
inline PinchingSchedule reference_schedule(int steps = 10, double y_factor = 1.01) {
  PinchingSchedule s;
  for (int n = 1; n <= steps; ++n) {
    double x = 2.0 + std::ldexp(1.0, -2 * n);
    double y = y_factor * minimal_admissible_y(x);
    s.steps.push_back({Rational(x), Rational(y)});
  }
  s.probes = {canonical_class(parse_word("b", 2)), canonical_class(parse_word("abaaB", 2))};
  return s;
}

struct ProbeSample {
  std::string curve;
  long double trace = 0;
  long double length = 0;
};

struct StepReport {
  int step = 0;
  long double x = 0, y = 0, z = 0;
  std::vector<ProbeSample> samples;  // pinched curve first, then probes
};

struct LengthReport {
  std::vector<StepReport> steps;
  bool pinched_strictly_decreasing = true;
  long double pinched_final = 0;
  std::map<std::string, long double> probe_min;
  std::map<std::string, long double> probe_max;

  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "step,x,y,z,curve,trace,length\n";
    for (auto const& st : steps) {
      for (auto const& smp : st.samples) {
        os << st.step << "," << static_cast<double>(st.x) << "," << static_cast<double>(st.y)
           << "," << static_cast<double>(st.z) << "," << smp.curve << ","
           << static_cast<double>(smp.trace) << "," << static_cast<double>(smp.length) << "\n";
      }
    }
    return os.str();
  }
};

inline LengthReport pinching_experiment(PinchingSchedule const& schedule) {
  if (schedule.steps.empty()) throw DomainError("empty pinching schedule");
  LengthReport rep;
  std::vector<CurveClass> curves{schedule.pinched};
  for (auto const& p : schedule.probes) curves.push_back(p);
  long double previous = std::numeric_limits<long double>::infinity();
  int index = 0;
  for (auto const& step : schedule.steps) {
    FrickeTriple s = punctured_torus_structure(step.x, step.y);
    StepReport sr;
    sr.step = ++index;
    sr.x = s.xd;
    sr.y = s.yd;
    sr.z = s.zd;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      CurveLength cl = curve_length(s, curves[i]);
      std::string name = to_string(curves[i]);
      sr.samples.push_back({name, cl.trace, cl.length});
      if (i == 0) {
        if (!(cl.length < previous)) rep.pinched_strictly_decreasing = false;
        previous = cl.length;
        rep.pinched_final = cl.length;
      } else {
        auto [mn, fresh] = rep.probe_min.try_emplace(name, cl.length);
        if (!fresh) mn->second = std::min(mn->second, cl.length);
        auto [mx, fresh2] = rep.probe_max.try_emplace(name, cl.length);
        if (!fresh2) mx->second = std::max(mx->second, cl.length);
      }
    }
    rep.steps.push_back(std::move(sr));
  }
  return rep;
}

}  // namespace horowitz

#endif  // HOROWITZ_GEOMETRY_HPP_
