// Self-intersection and intersection numbers of curves on the
// once-punctured torus.
//
// A structure is realized by exact generator matrices. A crossing of the
// closed geodesics of w1 and w2 corresponds to a double coset <w1> g <w2>
// for which the axis of w1 and g(axis of w2) have interleaved endpoints.
//
// Candidates: if two axes cross, the corresponding bi-infinite paths in the
// Cayley tree (which embeds in the hyperbolic plane as the lift of a spine)
// share a vertex u = U = g V, with U a vertex on the path of w1 and V one on
// the path of w2. So only g = U V^{-1} need be considered. Along the shared
// segment of the two paths g is constant, and the segment start modulo the
// periods (n1, n2) is a complete invariant of the double coset. The minimal
// length of an element of the coset is taken over all candidate pairs with
// |U|, |V| <= B, which suffices for every element of length <= B.
//
// Endpoint comparisons are exact: endpoints live in a quadratic extension
// (two for pairs of curves) of the field of matrix entries.

#ifndef HOROWITZ_INTERSECTIONS_HPP_
#define HOROWITZ_INTERSECTIONS_HPP_

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/geometry.hpp"
#include "horowitz/mat2.hpp"
#include "horowitz/quadratic_field.hpp"
#include "horowitz/rational.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

////////////////////////////////////////////////////////////////////////////
// Exact realizations
////////////////////////////////////////////////////////////////////////////

template <class F>
struct Realization {
  Mat2<F> a, b;

  Mat2<F> image(Letter l) const {
    Mat2<F> const& g = l.generator() == 0 ? a : b;
    return l.is_inverse() ? g.sl_inverse() : g;
  }

  Mat2<F> evaluate(std::span<Letter const> letters) const {
    Mat2<F> acc = Mat2<F>::identity();
    for (Letter l : letters) acc = acc * image(l);
    return acc;
  }
};

class DiscreteStructure {
 public:
  explicit DiscreteStructure(FrickeTriple triple) : triple_(std::move(triple)) {
    if (triple_.z_rational) {
      if (auto r = rational_realization()) {
        realization_ = std::move(*r);
        return;
      }
    }
    realization_ = tower_realization();
  }

  // (3, 3, 6)
  static DiscreteStructure standard() {
    return DiscreteStructure(punctured_torus_structure(Rational(3), Rational(3)));
  }

  FrickeTriple const& triple() const noexcept {
    return triple_;
  }
  bool is_rational() const noexcept {
    return std::holds_alternative<Realization<Rational>>(realization_);
  }

  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(std::forward<Fn>(fn), realization_);
  }

  // Generator matrices as text, for reports.
  std::string describe() const {
    if (auto const* r = std::get_if<Realization<Rational>>(&realization_)) {
      auto fmt = [](Mat2<Rational> const& m) {
        return "[[" + m.p.get_str() + "," + m.q.get_str() + "],[" + m.r.get_str() + "," +
               m.s.get_str() + "]]";
      };
      return "A=" + fmt(r->a) + " B=" + fmt(r->b);
    }
    return "A=[[x,-1],[1,0]] B=[[0,c],[-1/c,y]], c+1/c=z";
  }

 private:
  // A = [[x, -1], [1, 0]], B = [[a, b], [c, y - a]] with rational entries.
  std::optional<Realization<Rational>> rational_realization() const {
    Rational const& x = triple_.x;
    Rational const& y = triple_.y;
    Rational const& z = *triple_.z_rational;
    for (Rational a : {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2),
                       Rational(3), Rational(-3), Rational(1, 2), Rational(-1, 2)}) {
      Rational k = z - x * a;
      Rational q = a * (y - a) - 1;
      auto root = exact_sqrt(Rational(k * k + 4 * q));
      if (!root) continue;
      Rational bb = (k + *root) / 2;
      Rational c = bb - k;
      Realization<Rational> r{{x, Rational(-1), Rational(1), Rational(0)},
                              {a, bb, c, Rational(y - a)}};
      if (r.b.det() == 1 && (r.a * r.b).trace() == z) return r;
    }
    return std::nullopt;
  }

  // B = [[0, c], [-1/c, y]] with c = (z + sqrt(z^2 - 4))/2.
  Realization<Tower2> tower_realization() const {
    QuadQ const& z = triple_.z;
    QuadQ e = z * z - QuadQ(4);
    if (e.sign() <= 0) {
      throw DomainError("tr ab must exceed 2 for a discrete structure");
    }
    Tower2 root = Tower2::sqrt_of(e);
    Tower2 half(Rational(1, 2));
    Tower2 zz(z);
    Tower2 c = half * (zz + root);
    Tower2 cinv = half * (zz - root);
    Tower2 x(triple_.x), y(triple_.y);
    return Realization<Tower2>{{x, Tower2(-1), Tower2(1), Tower2(0)},
                               {Tower2(0), c, Tower2(-cinv), y}};
  }

  FrickeTriple triple_;
  std::variant<Realization<Rational>, Realization<Tower2>> realization_;
};

////////////////////////////////////////////////////////////////////////////
// Axes
////////////////////////////////////////////////////////////////////////////

// (u : v) on the projective line; v == 0 is the point at infinity.
template <class E>
struct ProjectivePoint {
  E u, v;

  bool at_infinity() const {
    return field_sign(v) == 0;
  }
  ProjectivePoint normalized() const {
    if (at_infinity()) return {E(1), E(0)};
    if (field_sign(v) < 0) return {-u, -v};
    return *this;
  }
  long double approx() const {
    if (at_infinity()) return std::numeric_limits<long double>::infinity();
    return approximate(u) / approximate(v);
  }
};

// Order on R u {infinity}, infinity last. Inputs must be normalized.
template <class E>
int compare_points(ProjectivePoint<E> const& p, ProjectivePoint<E> const& q) {
  bool pi = p.at_infinity();
  bool qi = q.at_infinity();
  if (pi || qi) return static_cast<int>(pi) - static_cast<int>(qi);
  return field_sign(E(p.u * q.v - q.u * p.v));
}

template <class E, class F>
ProjectivePoint<E> apply(Mat2<F> const& g, ProjectivePoint<E> const& x) {
  return ProjectivePoint<E>{E(g.p) * x.u + E(g.q) * x.v, E(g.r) * x.u + E(g.s) * x.v}
      .normalized();
}

template <class E>
struct Axis {
  ProjectivePoint<E> attracting, repelling;
};

template <class E>
Axis<E> axis_from_points(ProjectivePoint<E> attracting, ProjectivePoint<E> repelling) {
  return {attracting.normalized(), repelling.normalized()};
}

template <class E, class F>
Axis<E> transformed(Mat2<F> const& g, Axis<E> const& ax) {
  return {apply(g, ax.attracting), apply(g, ax.repelling)};
}

// Endpoints strictly interleave. Shared endpoints are signalled.
template <class E>
bool axes_cross(Axis<E> const& a1, Axis<E> const& a2) {
  ProjectivePoint<E> lo = a1.attracting;
  ProjectivePoint<E> hi = a1.repelling;
  int c = compare_points(lo, hi);
  if (c == 0) throw SharedEndpointError("degenerate axis");
  if (c > 0) std::swap(lo, hi);
  auto inside = [&](ProjectivePoint<E> const& e) {
    int c1 = compare_points(e, lo);
    int c2 = compare_points(e, hi);
    if (c1 == 0 || c2 == 0) throw SharedEndpointError("axes share an endpoint");
    return c1 > 0 && c2 < 0;
  };
  return inside(a2.attracting) != inside(a2.repelling);
}

// Axis of m given sqrt(tr(m)^2 - 4) in the extension E.
template <class E, class F>
Axis<E> axis_of(Mat2<F> const& m, E const& root) {
  F t = m.trace();
  F disc = t * t - F(4);
  int ds = field_sign(disc);
  if (ds <= 0) {
    throw NotHyperbolicError(ds == 0 ? "parabolic element has no axis"
                                     : "elliptic element has no axis",
                             ds == 0);
  }
  int st = field_sign(t);
  auto eigen = [&](int sigma) {
    E sr = sigma > 0 ? root : -root;
    E u = E(F(m.p - m.s)) + sr;
    E v = E(F(F(2) * m.r));
    if (field_sign(u) == 0 && field_sign(v) == 0) {
      u = E(F(F(2) * m.q));
      v = E(F(m.s - m.p)) + sr;
    }
    return ProjectivePoint<E>{u, v}.normalized();
  };
  return {eigen(st), eigen(-st)};
}

// Floating view of an axis, for reports.
struct AxisSummary {
  long double attracting = 0, repelling = 0;  // +inf for the point at infinity
  long double trace = 0;
};

inline AxisSummary axis(DiscreteStructure const& s, CyclicWord const& w) {
  if (w.rank() != 2) throw DomainError("axes need a rank-2 word");
  return s.visit([&](auto const& real) {
    using F = std::decay_t<decltype(real.a.p)>;
    Mat2<F> m = real.evaluate(w.letters());
    F t = m.trace();
    F d = t * t - F(4);
    if (field_sign(d) <= 0) {
      throw NotHyperbolicError("word " + to_string(w) + " has no axis", field_sign(d) == 0);
    }
    auto ax = axis_of(m, Quad<F>::sqrt_of(d));
    return AxisSummary{ax.attracting.approx(), ax.repelling.approx(), approximate(t)};
  });
}

////////////////////////////////////////////////////////////////////////////
// Double-coset enumeration
////////////////////////////////////////////////////////////////////////////

struct CrossingCount {
  std::size_t count = 0;
  int bound = 0;
  bool stable = false;
  std::vector<std::pair<int, std::size_t>> history;  // (B, count(B)) from the first B - 2
};

namespace detail {

  inline std::size_t pmod(long k, std::size_t n) {
    long m = k % static_cast<long>(n);
    return static_cast<std::size_t>(m < 0 ? m + static_cast<long>(n) : m);
  }

  // Last letter of the path from vertex 0 to vertex k along the line of w.
  inline Letter last_letter(Letters const& w, long k) {
    return k > 0 ? w[pmod(k - 1, w.size())] : w[pmod(k, w.size())].inverse();
  }

  struct CosetKey {
    std::size_t i, j;
    friend auto operator<=>(CosetKey const&, CosetKey const&) = default;
  };

  // Start of the shared segment through phases (i, j), or nullopt when the
  // two lines coincide.
  inline std::optional<CosetKey> segment_start(Letters const& w1, Letters const& w2,
                                               std::size_t i, std::size_t j) {
    std::size_t const n1 = w1.size(), n2 = w2.size();
    std::size_t steps = 0;
    int dir = 0;
    for (;;) {
      Letter back1 = w1[(i + n1 - 1) % n1];
      bool same = back1 == w2[(j + n2 - 1) % n2];
      bool opposite = back1.inverse() == w2[j];
      if (dir == 0) dir = same ? 1 : (opposite ? -1 : 0);
      if ((dir == 1 && same) || (dir == -1 && opposite)) {
        i = (i + n1 - 1) % n1;
        j = dir == 1 ? (j + n2 - 1) % n2 : (j + 1) % n2;
        if (++steps > n1 + n2) return std::nullopt;
        continue;
      }
      return CosetKey{i, j};
    }
  }

  // Minimal element length per double coset, over candidates with
  // |U|, |V| <= max_bound.
  inline std::map<CosetKey, int> coset_lengths(Letters const& w1, Letters const& w2,
                                               int max_bound, bool same_curve) {
    std::size_t const n1 = w1.size(), n2 = w2.size();
    std::vector<std::optional<CosetKey>> start(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        if (same_curve && i == j) continue;
        start[i * n2 + j] = segment_start(w1, w2, i, j);
      }
    }
    std::map<CosetKey, int> out;
    for (long k1 = -max_bound; k1 <= max_bound; ++k1) {
      for (long k2 = -max_bound; k2 <= max_bound; ++k2) {
        auto const& key = start[pmod(k1, n1) * n2 + pmod(k2, n2)];
        if (!key) continue;
        long a = k1, b = k2;
        int shared = 0;
        while (a != 0 && b != 0 && last_letter(w1, a) == last_letter(w2, b)) {
          a += a > 0 ? -1 : 1;
          b += b > 0 ? -1 : 1;
          ++shared;
        }
        int len = static_cast<int>(std::labs(k1) + std::labs(k2)) - 2 * shared;
        auto [it, fresh] = out.try_emplace(*key, len);
        if (!fresh) it->second = std::min(it->second, len);
      }
    }
    return out;
  }

  template <class F>
  std::vector<Mat2<F>> prefix_matrices(Realization<F> const& r, Letters const& w) {
    std::vector<Mat2<F>> out{Mat2<F>::identity()};
    for (std::size_t i = 0; i + 1 < w.size(); ++i) out.push_back(out.back() * r.image(w[i]));
    return out;
  }

  template <class E, class F>
  std::vector<std::pair<CosetKey, int>> crossing_cosets(
      Realization<F> const& r, Letters const& w1, Letters const& w2,
      Axis<E> const& ax1, Axis<E> const& ax2, std::map<CosetKey, int> const& lengths) {
    auto p1 = prefix_matrices(r, w1);
    auto p2 = prefix_matrices(r, w2);
    std::vector<std::pair<CosetKey, int>> out;
    for (auto const& [key, len] : lengths) {
      Mat2<F> g = p1[key.i] * p2[key.j].sl_inverse();
      if (axes_cross(ax1, transformed(g, ax2))) out.emplace_back(key, len);
    }
    return out;
  }

  inline CrossingCount certify(std::vector<std::pair<CosetKey, int>> const& crossing,
                               int start, int cap, std::size_t divisor) {
    auto count_at = [&](int b) {
      std::size_t c = 0;
      for (auto const& [key, len] : crossing) c += len <= b;
      if (c % divisor != 0) throw Error("crossing cosets do not pair with their inverses");
      return c / divisor;
    };
    CrossingCount out;
    out.history.emplace_back(start - 2, count_at(start - 2));
    for (int b = start; b <= cap; b += 2) {
      out.history.emplace_back(b, count_at(b));
      out.bound = b;
      out.count = out.history.back().second;
      if (count_at(b - 2) == out.count) {
        out.stable = true;
        break;
      }
    }
    return out;
  }

  inline void check_curve(CurveClass const& c) {
    if (c.rank() != 2) throw DomainError("intersection numbers need rank-2 classes");
    if (is_peripheral(c)) {
      throw NotHyperbolicError("peripheral class " + to_string(c) + " has no closed geodesic",
                               true);
    }
  }

}  // namespace detail

inline constexpr int kBoundSlack = 6;
inline constexpr int kBoundCapSlack = 14;

// Stable count of crossing double cosets, identified with their inverses.
// The bound starts at B (default length + 6) and rises by 2 until
// count(B - 2) == count(B), at most to length + 14 (or B if larger).
inline CrossingCount self_intersection(CurveClass const& c, DiscreteStructure const& s,
                                       std::optional<int> bound = std::nullopt) {
  detail::check_curve(c);
  int n = static_cast<int>(c.size());
  int start = bound.value_or(n + kBoundSlack);
  if (start < 4) throw DomainError("enumeration bound must be at least 4");
  int cap = std::max(start, n + kBoundCapSlack);
  Letters w(c.word().letters().begin(), c.word().letters().end());
  auto lengths = detail::coset_lengths(w, w, cap, true);
  return s.visit([&](auto const& real) {
    using F = std::decay_t<decltype(real.a.p)>;
    using E = Quad<F>;
    Mat2<F> m = real.evaluate(w);
    F t = m.trace();
    Axis<E> ax = axis_of(m, E::sqrt_of(F(t * t - F(4))));
    auto crossing = detail::crossing_cosets(real, w, w, ax, ax, lengths);
    return detail::certify(crossing, start, cap, 2);
  });
}

inline bool is_simple(CurveClass const& c, DiscreteStructure const& s) {
  CrossingCount cc = self_intersection(c, s);
  if (!cc.stable) {
    throw Error("self-intersection count of " + to_string(c) + " did not stabilize by B=" +
                std::to_string(cc.bound));
  }
  return cc.count == 0;
}

// Geometric intersection number of two distinct curves.
inline CrossingCount intersection_number(CurveClass const& c1, CurveClass const& c2,
                                         DiscreteStructure const& s,
                                         std::optional<int> bound = std::nullopt) {
  detail::check_curve(c1);
  detail::check_curve(c2);
  if (c1 == c2) throw DomainError("intersection_number needs distinct classes");
  int n = static_cast<int>(std::max(c1.size(), c2.size()));
  int start = bound.value_or(n + kBoundSlack);
  if (start < 4) throw DomainError("enumeration bound must be at least 4");
  int cap = std::max(start, n + kBoundCapSlack);
  Letters w1(c1.word().letters().begin(), c1.word().letters().end());
  Letters w2(c2.word().letters().begin(), c2.word().letters().end());
  auto lengths = detail::coset_lengths(w1, w2, cap, false);
  return s.visit([&](auto const& real) {
    using F = std::decay_t<decltype(real.a.p)>;
    using E1 = Quad<F>;
    using E = Quad<E1>;
    Mat2<F> m1 = real.evaluate(w1);
    Mat2<F> m2 = real.evaluate(w2);
    F t1 = m1.trace(), t2 = m2.trace();
    E r1(E1::sqrt_of(F(t1 * t1 - F(4))));
    E r2 = E::sqrt_of(E1(F(t2 * t2 - F(4))));
    Axis<E> ax1 = axis_of(m1, r1);
    Axis<E> ax2 = axis_of(m2, r2);
    auto crossing = detail::crossing_cosets(real, w1, w2, ax1, ax2, lengths);
    return detail::certify(crossing, start, cap, 1);
  });
}

////////////////////////////////////////////////////////////////////////////
// Slopes of simple curves
////////////////////////////////////////////////////////////////////////////

struct Slope {
  long p = 0, q = 0;
  friend bool operator==(Slope const&, Slope const&) = default;
};

// Exponent sums, sign-normalized (p > 0, or p == 0 and q > 0).
inline Slope slope(CurveClass const& c, DiscreteStructure const& s) {
  if (c.rank() != 2) throw DomainError("slopes need rank-2 classes");
  long p = 0, q = 0;
  for (Letter l : c.word().letters()) (l.generator() == 0 ? p : q) += l.sign();
  if (p == 0 && q == 0) throw DomainError("class has zero abelianization");
  if (!is_simple(c, s)) throw DomainError("slope is defined for simple classes only");
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

inline Slope slope(CurveClass const& c) {
  static DiscreteStructure const standard = DiscreteStructure::standard();
  return slope(c, standard);
}

inline long slope_intersection(Slope const& u, Slope const& v) {
  return std::labs(u.p * v.q - u.q * v.p);
}

}  // namespace horowitz

#endif  // HOROWITZ_INTERSECTIONS_HPP_
