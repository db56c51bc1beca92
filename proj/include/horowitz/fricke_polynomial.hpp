// Integer polynomials in the Fricke coordinates x = tr a, y = tr b,
// z = tr ab.

#ifndef HOROWITZ_FRICKE_POLYNOMIAL_HPP_
#define HOROWITZ_FRICKE_POLYNOMIAL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "horowitz/error.hpp"

namespace horowitz {

struct Monomial {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::uint16_t z = 0;

  int degree() const noexcept {
    return x + y + z;
  }
  friend bool operator==(Monomial const&, Monomial const&) = default;
};

// Rendering order: total degree descending, then lexicographic with
// x > y > z (higher x exponent first, then y).
struct MonomialOrder {
  bool operator()(Monomial const& l, Monomial const& r) const noexcept {
    if (l.degree() != r.degree()) return l.degree() > r.degree();
    if (l.x != r.x) return l.x > r.x;
    if (l.y != r.y) return l.y > r.y;
    return l.z > r.z;
  }
};

namespace detail {
  inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw Error("Fricke polynomial coefficient overflow");
    }
    return r;
  }
  inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw Error("Fricke polynomial coefficient overflow");
    }
    return r;
  }
}  // namespace detail

class FrickePolynomial {
 public:
  using Terms = std::map<Monomial, std::int64_t, MonomialOrder>;

  FrickePolynomial() = default;

  static FrickePolynomial constant(std::int64_t c) {
    FrickePolynomial p;
    p.add_term({}, c);
    return p;
  }
  static FrickePolynomial x() {
    return monomial({1, 0, 0});
  }
  static FrickePolynomial y() {
    return monomial({0, 1, 0});
  }
  static FrickePolynomial z() {
    return monomial({0, 0, 1});
  }
  static FrickePolynomial monomial(Monomial m, std::int64_t c = 1) {
    FrickePolynomial p;
    p.add_term(m, c);
    return p;
  }

  Terms const& terms() const noexcept {
    return terms_;
  }
  bool is_zero() const noexcept {
    return terms_.empty();
  }
  int degree() const noexcept {
    return terms_.empty() ? -1 : terms_.begin()->first.degree();
  }
  std::int64_t coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(Monomial m, std::int64_t c) {
    if (c == 0) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = detail::checked_add(it->second, c);
      if (it->second == 0) {
        terms_.erase(it);
      }
    }
  }

  FrickePolynomial& operator+=(FrickePolynomial const& o) {
    for (auto const& [m, c] : o.terms_) {
      add_term(m, c);
    }
    return *this;
  }
  FrickePolynomial& operator-=(FrickePolynomial const& o) {
    for (auto const& [m, c] : o.terms_) {
      add_term(m, detail::checked_mul(c, -1));
    }
    return *this;
  }
  friend FrickePolynomial operator+(FrickePolynomial l, FrickePolynomial const& r) {
    return l += r;
  }
  friend FrickePolynomial operator-(FrickePolynomial l, FrickePolynomial const& r) {
    return l -= r;
  }
  friend FrickePolynomial operator*(FrickePolynomial const& l, FrickePolynomial const& r) {
    FrickePolynomial out;
    for (auto const& [ml, cl] : l.terms_) {
      for (auto const& [mr, cr] : r.terms_) {
        out.add_term({static_cast<std::uint16_t>(ml.x + mr.x),
                      static_cast<std::uint16_t>(ml.y + mr.y),
                      static_cast<std::uint16_t>(ml.z + mr.z)},
                     detail::checked_mul(cl, cr));
      }
    }
    return out;
  }
  friend bool operator==(FrickePolynomial const&, FrickePolynomial const&) = default;

  // Multiplication by a single variable (0 = x, 1 = y, 2 = z); the hot path
  // of the trace recursion.
  FrickePolynomial times_variable(int var) const {
    FrickePolynomial out;
    for (auto const& [m, c] : terms_) {
      Monomial s = m;
      (var == 0 ? s.x : var == 1 ? s.y : s.z) += 1;
      out.terms_.emplace_hint(out.terms_.end(), s, c);
    }
    return out;
  }

  template <class T>
  T evaluate(T const& xv, T const& yv, T const& zv) const {
    if (terms_.empty()) {
      return T(0);
    }
    int maxdeg = terms_.begin()->first.degree();
    std::vector<T> px{T(1)}, py{T(1)}, pz{T(1)};
    for (int i = 1; i <= maxdeg; ++i) {
      px.push_back(px.back() * xv);
      py.push_back(py.back() * yv);
      pz.push_back(pz.back() * zv);
    }
    T acc(0);
    for (auto const& [m, c] : terms_) {
      T term = T(c) * px[m.x];
      term = term * py[m.y];
      term = term * pz[m.z];
      acc = acc + term;
    }
    return acc;
  }

  // Canonical text, e.g. "x^2*y - 2*z + 3"; this string is the identity of
  // a character in search buckets.
  std::string to_string() const {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (auto const& [m, c] : terms_) {
      bool negative = c < 0;
      // Magnitude as unsigned so that INT64_MIN renders correctly.
      std::uint64_t mag = negative ? std::uint64_t(0) - static_cast<std::uint64_t>(c)
                                   : static_cast<std::uint64_t>(c);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      auto factor = [&](char name, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += "*";
        mono += name;
        if (e > 1) {
          mono += "^" + std::to_string(e);
        }
      };
      factor('x', m.x);
      factor('y', m.y);
      factor('z', m.z);
      if (mono.empty()) {
        out += std::to_string(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += std::to_string(mag) + "*" + mono;
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

}  // namespace horowitz

#endif  // HOROWITZ_FRICKE_POLYNOMIAL_HPP_
