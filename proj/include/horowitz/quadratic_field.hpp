// Exact arithmetic in towers of real quadratic extensions
//   Q ⊂ Q(√d1) ⊂ Q(√d1)(√d2) ⊂ ...
// with exact sign determination. Only ring operations are provided: the
// radicand at each level is not required to be a non-square, so the
// representation a + b√d is not unique and inverses are not available.
// Equality is decided through sign(x - y), which is exact regardless.

#ifndef HOROWITZ_QUADRATIC_FIELD_HPP_
#define HOROWITZ_QUADRATIC_FIELD_HPP_

#include <cmath>
#include <memory>
#include <ostream>
#include <type_traits>
#include <utility>

#include "horowitz/error.hpp"
#include "horowitz/rational.hpp"

namespace horowitz {

inline int field_sign(Rational const& q) {
  return sgn(q);
}

inline long double approximate(Rational const& q) {
  return to_long_double(q);
}

template <class F>
class Quad;

template <class F>
int field_sign(Quad<F> const& x);

// a + b √d with a, b, d in F and d >= 0.
template <class F>
class Quad {
 public:
  using Base = F;

  Quad() : a_(0), b_(0) {}
  Quad(F a) : a_(std::move(a)), b_(0) {}  // NOLINT: embedding
  Quad(int a) : a_(a), b_(0) {}           // NOLINT
  template <class G>
    requires(!std::is_same_v<std::decay_t<G>, F> && !std::is_same_v<std::decay_t<G>, int> &&
             !std::is_same_v<std::decay_t<G>, Quad> && std::is_constructible_v<F, G const&>)
  explicit Quad(G const& g) : a_(F(g)), b_(0) {}

  // √d as an element of F(√d).
  static Quad sqrt_of(F d) {
    if (field_sign(d) < 0) {
      throw DomainError("square root of a negative element");
    }
    Quad q;
    q.a_ = F(0);
    q.b_ = F(1);
    q.d_ = std::make_shared<F const>(std::move(d));
    return q;
  }

  F const& rational_part() const noexcept {
    return a_;
  }
  F const& radical_part() const noexcept {
    return b_;
  }
  std::shared_ptr<F const> const& radicand() const noexcept {
    return d_;
  }

  friend Quad operator+(Quad const& x, Quad const& y) {
    return Quad(F(x.a_ + y.a_), F(x.b_ + y.b_), common(x, y));
  }
  friend Quad operator-(Quad const& x, Quad const& y) {
    return Quad(F(x.a_ - y.a_), F(x.b_ - y.b_), common(x, y));
  }
  friend Quad operator-(Quad const& x) {
    return Quad(F(-x.a_), F(-x.b_), x.d_);
  }
  friend Quad operator*(Quad const& x, Quad const& y) {
    bool xb = field_sign(x.b_) != 0;
    bool yb = field_sign(y.b_) != 0;
    if (!xb && !yb) {
      return Quad(F(x.a_ * y.a_));
    }
    if (!xb) {
      return Quad(F(x.a_ * y.a_), F(x.a_ * y.b_), y.d_);
    }
    if (!yb) {
      return Quad(F(x.a_ * y.a_), F(x.b_ * y.a_), x.d_);
    }
    auto d = common(x, y);
    return Quad(F(x.a_ * y.a_ + x.b_ * y.b_ * *d), F(x.a_ * y.b_ + x.b_ * y.a_), d);
  }
  Quad& operator+=(Quad const& y) {
    return *this = *this + y;
  }
  Quad& operator-=(Quad const& y) {
    return *this = *this - y;
  }
  Quad& operator*=(Quad const& y) {
    return *this = *this * y;
  }

  int sign() const {
    int sa = field_sign(a_);
    int sb = field_sign(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 d.
    int s = field_sign(F(a_ * a_ - b_ * b_ * *d_));
    return s > 0 ? sa : (s < 0 ? sb : 0);
  }

  friend bool operator==(Quad const& x, Quad const& y) {
    return (x - y).sign() == 0;
  }
  friend bool operator!=(Quad const& x, Quad const& y) {
    return !(x == y);
  }

 private:
  Quad(F a, F b, std::shared_ptr<F const> d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (!d_ && field_sign(b_) != 0) {
      throw Error("quadratic element without radicand");
    }
  }

  static std::shared_ptr<F const> common(Quad const& x, Quad const& y) {
    if (!x.d_) return y.d_;
    if (!y.d_ || x.d_ == y.d_) return x.d_;
    if (field_sign(F(*x.d_ - *y.d_)) != 0) {
      throw Error("mixing elements of different quadratic extensions");
    }
    return x.d_;
  }

  F a_;
  F b_;
  std::shared_ptr<F const> d_;
};

template <class F>
int field_sign(Quad<F> const& x) {
  return x.sign();
}

template <class F>
long double approximate(Quad<F> const& x) {
  long double a = approximate(x.rational_part());
  if (!x.radicand()) return a;
  return a + approximate(x.radical_part()) * std::sqrt(approximate(*x.radicand()));
}

// Q(√d1)(√d2): the field of the generator entries for structures whose
// Fricke coordinate z is irrational.
using Tower2 = Quad<Quad<Rational>>;

}  // namespace horowitz

#endif  // HOROWITZ_QUADRATIC_FIELD_HPP_
