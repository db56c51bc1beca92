// Exact rational helpers on top of gmpxx.

#ifndef HOROWITZ_RATIONAL_HPP_
#define HOROWITZ_RATIONAL_HPP_

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "horowitz/error.hpp"

namespace horowitz {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q", and optional leading sign. Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw ParseError("empty rational literal");
  }
  std::string s(text);
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw ParseError("malformed rational literal '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return q;
}

// Always "p/q" with q >= 1, including integers ("3/1").
inline std::string format_rational(Rational const& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline int sign(Rational const& q) {
  return sgn(q);
}

inline int sign(Integer const& z) {
  return sgn(z);
}

// Square root in Q when it exists.
inline std::optional<Rational> exact_sqrt(Rational const& q) {
  if (sgn(q) < 0) {
    return std::nullopt;
  }
  Rational c(q);
  c.canonicalize();
  Integer num = c.get_num();
  Integer den = c.get_den();
  Integer rn, rd;
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

inline long double to_long_double(Rational const& q) {
  // Split into a double head and a double tail: ~106 bits, enough for an
  // 80-bit long double even when num/den are huge.
  mpf_class f(q, 192);
  long exp = 0;
  double head = mpf_get_d_2exp(&exp, f.get_mpf_t());
  mpf_class scaled(head, 192);
  if (exp >= 0) {
    mpf_mul_2exp(scaled.get_mpf_t(), scaled.get_mpf_t(), static_cast<unsigned long>(exp));
  } else {
    mpf_div_2exp(scaled.get_mpf_t(), scaled.get_mpf_t(), static_cast<unsigned long>(-exp));
  }
  mpf_class tail = f - scaled;
  return std::ldexp(static_cast<long double>(head), static_cast<int>(exp)) +
         static_cast<long double>(tail.get_d());
}

}  // namespace horowitz

#endif  // HOROWITZ_RATIONAL_HPP_
