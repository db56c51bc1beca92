// 2x2 matrices over a closed set of scalar kinds and representations of
// free groups built from them.
//
// The scalar kinds are Rational (exact), Complex (double precision) and
// TPoly (polynomials in an indeterminate T with rational coefficients).
// Mixing kinds does not compile; there are no implicit conversions.

#ifndef HOROWITZ_MAT2_HPP_
#define HOROWITZ_MAT2_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/rational.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

using Complex = std::complex<double>;

// Univariate polynomial in T, coefficients low to high, no trailing zeros.
template <class C>
class UPoly {
 public:
  UPoly() = default;
  UPoly(C c) {  // NOLINT: constants embed implicitly
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  UPoly(int c) : UPoly(C(c)) {}  // NOLINT

  static UPoly indeterminate() {
    UPoly p;
    p.coeffs_ = {C(0), C(1)};
    return p;
  }

  int degree() const noexcept {
    return static_cast<int>(coeffs_.size()) - 1;
  }
  C coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)]
                                                            : C(0);
  }
  std::vector<C> const& coefficients() const noexcept {
    return coeffs_;
  }
  bool is_zero() const noexcept {
    return coeffs_.empty();
  }

  friend UPoly operator+(UPoly const& l, UPoly const& r) {
    UPoly out;
    out.coeffs_.resize(std::max(l.coeffs_.size(), r.coeffs_.size()), C(0));
    for (std::size_t i = 0; i < l.coeffs_.size(); ++i) out.coeffs_[i] += l.coeffs_[i];
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) out.coeffs_[i] += r.coeffs_[i];
    out.trim();
    return out;
  }
  friend UPoly operator-(UPoly const& l) {
    UPoly out = l;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend UPoly operator-(UPoly const& l, UPoly const& r) {
    return l + (-r);
  }
  friend UPoly operator*(UPoly const& l, UPoly const& r) {
    if (l.is_zero() || r.is_zero()) return {};
    UPoly out;
    out.coeffs_.assign(l.coeffs_.size() + r.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < r.coeffs_.size(); ++j) {
        out.coeffs_[i + j] += l.coeffs_[i] * r.coeffs_[j];
      }
    }
    out.trim();
    return out;
  }
  friend bool operator==(UPoly const& l, UPoly const& r) {
    return l.coeffs_ == r.coeffs_;
  }
  friend bool operator!=(UPoly const& l, UPoly const& r) {
    return !(l == r);
  }

  C evaluate(C const& t) const {
    C acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * t + *it;
    }
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<C> coeffs_;
};

using TPoly = UPoly<Rational>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr char const* name = "rational";
  static bool is_zero(Rational const& v) {
    return sgn(v) == 0;
  }
  static bool is_one(Rational const& v) {
    return v == 1;
  }
  static std::optional<Rational> sqrt(Rational const& v) {
    return exact_sqrt(v);
  }
};

template <>
struct ScalarTraits<Integer> {
  static constexpr bool exact = true;
  static constexpr char const* name = "integer";
  static bool is_zero(Integer const& v) {
    return sgn(v) == 0;
  }
  static bool is_one(Integer const& v) {
    return v == 1;
  }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr char const* name = "complex";
  static constexpr double kDetTolerance = 1e-12;
  static bool is_zero(Complex const& v) {
    return v == 0.0;
  }
  static bool is_one(Complex const& v) {
    return std::abs(v - 1.0) <= kDetTolerance;
  }
  // Principal branch.
  static std::optional<Complex> sqrt(Complex const& v) {
    return std::sqrt(v);
  }
};

template <>
struct ScalarTraits<TPoly> {
  static constexpr bool exact = true;
  static constexpr char const* name = "tpoly";
  static bool is_zero(TPoly const& v) {
    return v.is_zero();
  }
  static bool is_one(TPoly const& v) {
    return v == TPoly(1);
  }
};

// [[p, q], [r, s]]
template <class S>
struct Mat2 {
  S p, q, r, s;

  static Mat2 identity() {
    return {S(1), S(0), S(0), S(1)};
  }

  S trace() const {
    return p + s;
  }
  S det() const {
    return p * s - q * r;
  }
  // Inverse of a determinant-one matrix (adjugate).
  Mat2 sl_inverse() const {
    return {s, -q, -r, p};
  }
  // Inverse of any invertible matrix over a field.
  Mat2 inverse() const {
    S d = det();
    if (ScalarTraits<S>::is_zero(d)) {
      throw DomainError("singular matrix has no inverse");
    }
    return {s / d, -q / d, -r / d, p / d};
  }

  friend Mat2 operator*(Mat2 const& a, Mat2 const& b) {
    return {a.p * b.p + a.q * b.r, a.p * b.q + a.q * b.s, a.r * b.p + a.s * b.r,
            a.r * b.q + a.s * b.s};
  }
  friend bool operator==(Mat2 const& a, Mat2 const& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
  }
};

template <class S>
bool has_unit_determinant(Mat2<S> const& m) {
  return ScalarTraits<S>::is_one(m.det());
}

// Conjugate g m g^{-1}.
template <class S>
Mat2<S> conjugate(Mat2<S> const& g, Mat2<S> const& m) {
  return g * m * g.inverse();
}

// Generator -> matrix assignment for a free group; all matrices lie in SL2.
template <class S>
class Representation {
 public:
  explicit Representation(std::vector<Mat2<S>> generators)
      : generators_(std::move(generators)) {
    detail::check_rank(rank());
    for (auto const& g : generators_) {
      if (!has_unit_determinant(g)) {
        throw DomainError("representation matrices must have determinant 1");
      }
    }
  }

  int rank() const noexcept {
    return static_cast<int>(generators_.size());
  }
  Mat2<S> const& generator(int i) const {
    return generators_.at(static_cast<std::size_t>(i));
  }
  std::vector<Mat2<S>> const& generators() const noexcept {
    return generators_;
  }

  Mat2<S> image(Letter l) const {
    Mat2<S> const& g = generator(l.generator());
    return l.is_inverse() ? g.sl_inverse() : g;
  }

  Mat2<S> evaluate(Word const& w) const {
    if (w.rank() > rank()) {
      throw DomainError("word rank exceeds representation rank");
    }
    Mat2<S> acc = Mat2<S>::identity();
    for (Letter l : w.letters()) {
      acc = acc * image(l);
    }
    return acc;
  }

  S trace(Word const& w) const {
    return evaluate(w).trace();
  }

  // g rho g^{-1} generator-wise.
  Representation conjugated_by(Mat2<S> const& g) const {
    std::vector<Mat2<S>> out;
    out.reserve(generators_.size());
    Mat2<S> ginv = g.inverse();
    for (auto const& m : generators_) {
      out.push_back(g * m * ginv);
    }
    return Representation(std::move(out));
  }

 private:
  std::vector<Mat2<S>> generators_;
};

// Serialization: four exact rationals "p/q".
inline std::vector<std::string> to_strings(Mat2<Rational> const& m) {
  return {format_rational(m.p), format_rational(m.q), format_rational(m.r),
          format_rational(m.s)};
}

inline Mat2<Rational> mat2_from_strings(std::vector<std::string> const& entries) {
  if (entries.size() != 4) {
    throw ParseError("matrix needs exactly four entries");
  }
  return {parse_rational(entries[0]), parse_rational(entries[1]), parse_rational(entries[2]),
          parse_rational(entries[3])};
}

}  // namespace horowitz

#endif  // HOROWITZ_MAT2_HPP_
