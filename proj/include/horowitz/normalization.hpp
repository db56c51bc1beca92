// Fixed points of Moebius maps, cross-ratios, and conjugation of a rank-2
// representation into the triangular family
//   rho(a) = [[lambda, T], [0, 1/lambda]],  rho(b) = [[mu, 0], [T, 1/mu]].
//
// The conjugator sends a fixed point x_a of rho(a) to infinity and a fixed
// point x_b of rho(b) to 0; a diagonal rescaling then equalizes the two
// off-diagonal entries, which forces
//   T^2 = (1/lambda - lambda)(mu - 1/mu) [x_a, y_a; x_b, y_b]
// with [p1, p2; p3, p4] = (p1 - p4)(p3 - p2) / ((p1 - p2)(p3 - p4)).

#ifndef HOROWITZ_NORMALIZATION_HPP_
#define HOROWITZ_NORMALIZATION_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "horowitz/error.hpp"
#include "horowitz/mat2.hpp"
#include "horowitz/traces.hpp"

namespace horowitz {

// A point of the boundary circle: a scalar or infinity.
template <class S>
struct BoundaryPoint {
  bool infinite = false;
  S value{};

  static BoundaryPoint at_infinity() {
    return {true, S(0)};
  }
  static BoundaryPoint finite(S v) {
    return {false, std::move(v)};
  }
  friend bool operator==(BoundaryPoint const& l, BoundaryPoint const& r) {
    if (l.infinite || r.infinite) return l.infinite == r.infinite;
    return l.value == r.value;
  }
};

template <class S>
struct FixedPoint {
  BoundaryPoint<S> point;
  // Eigenvalue of the eigenvector (point, 1), or (1, 0) at infinity.
  S eigenvalue;
};

template <class S>
struct FixedPointPair {
  FixedPoint<S> first;
  FixedPoint<S> second;
};

// Fixed points of z -> (p z + q)/(r z + s) for m in SL2. Throws
// NotHyperbolicError(parabolic) for a single fixed point and DomainError for
// +-identity or when the square root does not exist in the scalar field.
template <class S>
FixedPointPair<S> fixed_points(Mat2<S> const& m) {
  using Tr = ScalarTraits<S>;
  if (Tr::is_zero(m.q) && Tr::is_zero(m.r) && Tr::is_zero(m.p - m.s)) {
    throw DomainError("+-identity fixes every point");
  }
  S t = m.trace();
  S disc = t * t - S(4);
  if (Tr::is_zero(disc)) {
    throw NotHyperbolicError("parabolic matrix has a single fixed point", true);
  }
  auto root = Tr::sqrt(disc);
  if (!root) {
    throw DomainError(std::string("fixed points are not in the ") + Tr::name +
                      " field (trace^2 - 4 has no square root)");
  }
  if (Tr::is_zero(m.r)) {
    // Upper triangular: infinity (eigenvalue p) and q/(s - p).
    S other = m.q / (m.s - m.p);
    return {{BoundaryPoint<S>::at_infinity(), m.p},
            {BoundaryPoint<S>::finite(other), m.s}};
  }
  S two_r = S(2) * m.r;
  S z1 = (m.p - m.s + *root) / two_r;
  S z2 = (m.p - m.s - *root) / two_r;
  S e1 = m.r * z1 + m.s;
  S e2 = m.r * z2 + m.s;
  return {{BoundaryPoint<S>::finite(z1), e1}, {BoundaryPoint<S>::finite(z2), e2}};
}

// (p1 - p4)(p3 - p2) / ((p1 - p2)(p3 - p4)); a factor containing an
// infinite point cancels against its partner.
template <class S>
S cross_ratio(BoundaryPoint<S> const& p1, BoundaryPoint<S> const& p2,
              BoundaryPoint<S> const& p3, BoundaryPoint<S> const& p4) {
  using Tr = ScalarTraits<S>;
  int infinite = p1.infinite + p2.infinite + p3.infinite + p4.infinite;
  if (infinite > 1) {
    throw SharedEndpointError("cross-ratio needs at most one point at infinity");
  }
  auto diff = [](BoundaryPoint<S> const& u, BoundaryPoint<S> const& v) -> std::optional<S> {
    if (u.infinite || v.infinite) return std::nullopt;
    return S(u.value - v.value);
  };
  S num(1), den(1);
  for (auto const& f : {diff(p1, p4), diff(p3, p2)}) {
    if (f) num = num * *f;
  }
  for (auto const& f : {diff(p1, p2), diff(p3, p4)}) {
    if (f) den = den * *f;
  }
  if (Tr::is_zero(den)) {
    throw SharedEndpointError("cross-ratio with coincident points");
  }
  return num / den;
}

// (1/lambda - lambda)(mu - 1/mu) [x_a, y_a; x_b, y_b]
template <class S>
S t_squared_from_fixed_points(S const& lambda, S const& mu, BoundaryPoint<S> const& xa,
                              BoundaryPoint<S> const& ya, BoundaryPoint<S> const& xb,
                              BoundaryPoint<S> const& yb) {
  S one(1);
  return (one / lambda - lambda) * (mu - one / mu) * cross_ratio(xa, ya, xb, yb);
}

template <class S>
struct NormalizationResult {
  HorowitzFamilyPoint<S> point;
  // g with g rho g^{-1} in the triangular family. g is invertible but in
  // general not of determinant one.
  Mat2<S> conjugator;
  BoundaryPoint<S> xa, ya, xb, yb;
  S t_squared;
  // How T was extracted from T^2: "rational" (exact root in Q, the
  // non-negative one) or "principal" (complex principal branch).
  std::string branch;
};

namespace detail {

  // Moebius map sending xa to infinity and xb to 0.
  template <class S>
  Mat2<S> frame_map(BoundaryPoint<S> const& xa, BoundaryPoint<S> const& xb) {
    if (xa.infinite) return {S(1), S(-xb.value), S(0), S(1)};
    if (xb.infinite) return {S(0), S(1), S(1), S(-xa.value)};
    return {S(1), S(-xb.value), S(1), S(-xa.value)};
  }

  template <class S>
  bool is_preferred_origin(BoundaryPoint<S> const& p, bool want_infinity) {
    if (want_infinity) return p.infinite;
    return !p.infinite && ScalarTraits<S>::is_zero(p.value);
  }

}  // namespace detail

// Conjugates a rank-2 representation into the triangular family. Labelings
// of the fixed points are tried in a fixed order (infinity first for a and 0
// first for b, when present); the first for which T exists in the scalar
// field wins.
template <class S>
NormalizationResult<S> normalize_to_horowitz(Representation<S> const& rho) {
  using Tr = ScalarTraits<S>;
  if (rho.rank() != 2) {
    throw DomainError("normalization requires a rank-2 representation");
  }
  Mat2<S> const& A = rho.generator(0);
  Mat2<S> const& B = rho.generator(1);
  FixedPointPair<S> fa = fixed_points(A);
  FixedPointPair<S> fb = fixed_points(B);
  std::array<BoundaryPoint<S> const*, 4> pts{&fa.first.point, &fa.second.point,
                                            &fb.first.point, &fb.second.point};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (*pts[i] == *pts[j]) {
        throw SharedEndpointError("generators share a fixed point");
      }
    }
  }

  std::array<std::pair<FixedPoint<S>, FixedPoint<S>>, 2> a_labels{
      std::pair{fa.first, fa.second}, std::pair{fa.second, fa.first}};
  if (detail::is_preferred_origin(fa.second.point, true)) std::swap(a_labels[0], a_labels[1]);
  std::array<std::pair<FixedPoint<S>, FixedPoint<S>>, 2> b_labels{
      std::pair{fb.first, fb.second}, std::pair{fb.second, fb.first}};
  if (detail::is_preferred_origin(fb.second.point, false)) std::swap(b_labels[0], b_labels[1]);

  for (auto const& [xa, ya] : a_labels) {
    for (auto const& [xb, yb] : b_labels) {
      Mat2<S> g = detail::frame_map(xa.point, xb.point);
      Mat2<S> ginv = g.inverse();
      Mat2<S> a1 = g * A * ginv;
      Mat2<S> b1 = g * B * ginv;
      S beta = a1.q;
      S gamma = b1.r;
      S t2 = beta * gamma;
      auto t = Tr::sqrt(t2);
      if (!t || Tr::is_zero(*t)) {
        continue;
      }
      S scale = *t / beta;
      Mat2<S> d{scale, S(0), S(0), S(1)};
      NormalizationResult<S> out{
          HorowitzFamilyPoint<S>{a1.p, S(1) / b1.s, *t},
          d * g,
          xa.point,
          ya.point,
          xb.point,
          yb.point,
          t2,
          Tr::exact ? "rational" : "principal"};
      return out;
    }
  }
  throw DomainError(std::string("T^2 has no square root in the ") + Tr::name +
                    " field for any labeling of the fixed points");
}

}  // namespace horowitz

#endif  // HOROWITZ_NORMALIZATION_HPP_
