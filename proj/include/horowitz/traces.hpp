// Characters of free-group words.
//
// For rank 2 the character of a word is an integer polynomial in the Fricke
// coordinates (x, y, z) = (tr a, tr b, tr ab). It is computed by the
// recursion
//
//   tr(U X^{-1} V) = tr(X) tr(U V) - tr(U X V)      (X^{-1} = tr(X) I - X)
//   tr(U X X V)    = tr(X) tr(U X V) - tr(U V)      (X^2 = tr(X) X - I)
//   tr((ab)^k)     = z tr((ab)^{k-1}) - tr((ab)^{k-2})
//
// memoized on canonical cyclic words (conjugation and inversion both leave
// the trace unchanged in SL2).

#ifndef HOROWITZ_TRACES_HPP_
#define HOROWITZ_TRACES_HPP_

#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/fricke_polynomial.hpp"
#include "horowitz/mat2.hpp"
#include "horowitz/rational.hpp"
#include "horowitz/rng.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

////////////////////////////////////////////////////////////////////////////
// Fricke characters
////////////////////////////////////////////////////////////////////////////

// Thread-safe memoizing calculator for rank-2 characters. Results do not
// depend on the order in which workers populate the table.
class FrickeEngine {
 public:
  FrickePolynomial character(Word const& w) {
    if (w.rank() != 2) {
      throw DomainError("Fricke characters are defined for rank 2 only");
    }
    return trace(Letters(w.letters().begin(), w.letters().end()));
  }

  FrickePolynomial character(CurveClass const& c) {
    return character(c.word());
  }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  static std::string key_of(Letters const& canonical) {
    std::string k;
    k.reserve(canonical.size());
    for (Letter l : canonical) k.push_back(static_cast<char>('0' + l.code()));
    return k;
  }

  static FrickePolynomial variable_of(Letter l) {
    return l.generator() == 0 ? FrickePolynomial::x() : FrickePolynomial::y();
  }

  FrickePolynomial chebyshev_z(std::size_t k) {
    std::unique_lock lock(cheb_mutex_);
    while (cheb_.size() <= k) {
      if (cheb_.empty()) {
        cheb_.push_back(FrickePolynomial::constant(2));
      } else if (cheb_.size() == 1) {
        cheb_.push_back(FrickePolynomial::z());
      } else {
        std::size_t n = cheb_.size();
        cheb_.push_back(cheb_[n - 1].times_variable(2) - cheb_[n - 2]);
      }
    }
    return cheb_[k];
  }

  FrickePolynomial trace(Letters const& raw) {
    Letters w = detail::free_reduce(raw);
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
      ++lo;
      --hi;
    }
    if (hi == lo) {
      return FrickePolynomial::constant(2);
    }
    Letters cyc(w.begin() + static_cast<std::ptrdiff_t>(lo),
                w.begin() + static_cast<std::ptrdiff_t>(hi));
    Letters canon = detail::canonical_cyclic(cyc);
    std::string key = key_of(canon);
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        return it->second;
      }
    }
    FrickePolynomial result = compute(canon);
    std::unique_lock lock(mutex_);
    memo_.try_emplace(std::move(key), result);
    return result;
  }

  FrickePolynomial compute(Letters const& canon) {
    // Work in whichever orientation has fewer inverse letters.
    std::size_t neg = 0;
    for (Letter l : canon) neg += l.is_inverse();
    Letters u = 2 * neg > canon.size() ? detail::inverse_letters(canon) : canon;
    std::size_t const n = u.size();

    for (std::size_t k = 0; k < n; ++k) {
      if (u[k].is_inverse()) {
        Letters removed = u;
        removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(k));
        Letters flipped = u;
        flipped[k] = u[k].inverse();
        return variable_of(u[k]) * trace(removed) - trace(flipped);
      }
    }
    if (n == 1) {
      return variable_of(u[0]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t k1 = (k + 1) % n;
      if (u[k] == u[k1]) {
        Letters one_less;
        Letters two_less;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != k) one_less.push_back(u[i]);
          if (i != k && i != k1) two_less.push_back(u[i]);
        }
        return variable_of(u[k]) * trace(one_less) - trace(two_less);
      }
    }
    // Positive, alternating: (ab)^k up to rotation.
    return chebyshev_z(n / 2);
  }

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, FrickePolynomial> memo_;
  std::mutex cheb_mutex_;
  std::vector<FrickePolynomial> cheb_;
};

inline FrickeEngine& default_fricke_engine() {
  static FrickeEngine engine;
  return engine;
}

inline FrickePolynomial fricke_char(Word const& w) {
  return default_fricke_engine().character(w);
}

inline FrickePolynomial fricke_char(CurveClass const& c) {
  return default_fricke_engine().character(c);
}

// Sound and complete for rank-2 character equality.
inline bool chars_equal_exact(CurveClass const& u, CurveClass const& v) {
  if (u.rank() != 2 || v.rank() != 2) {
    throw DomainError("exact character equality requires rank 2");
  }
  return fricke_char(u) == fricke_char(v);
}

////////////////////////////////////////////////////////////////////////////
// Probabilistic equality (any rank)
////////////////////////////////////////////////////////////////////////////

// Product of 4-8 elementary shears with entries in [-5, 5] \ {0}: an exact
// SL2(Z) matrix.
inline Mat2<Integer> random_unimodular(Rng& rng) {
  Mat2<Integer> m = Mat2<Integer>::identity();
  auto count = rng.uniform(4, 8);
  for (std::int64_t i = 0; i < count; ++i) {
    Integer k(static_cast<long>(rng.uniform_nonzero(-5, 5)));
    Mat2<Integer> shear = rng.coin() ? Mat2<Integer>{Integer(1), k, Integer(0), Integer(1)}
                                     : Mat2<Integer>{Integer(1), Integer(0), k, Integer(1)};
    m = m * shear;
  }
  return m;
}

inline Representation<Integer> random_integer_representation(int rank, Rng& rng) {
  std::vector<Mat2<Integer>> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(random_unimodular(rng));
  return Representation<Integer>(std::move(gens));
}

struct ProbabilisticVerdict {
  enum class Kind { Distinct, ProbablyEqual };
  Kind kind = Kind::ProbablyEqual;
  int trials = 0;  // trials run (up to and including the witness)
  std::optional<Representation<Integer>> witness;
  Integer trace_u, trace_v;  // at the witness

  bool distinct() const noexcept {
    return kind == Kind::Distinct;
  }
};

// Distinct is certain (an exact trace mismatch); ProbablyEqual means every
// trial agreed.
inline ProbabilisticVerdict chars_equal_probabilistic(Word const& u, Word const& v, int rank,
                                                      int trials, std::uint64_t seed) {
  if (trials < 1) {
    throw DomainError("trials must be >= 1");
  }
  if (u.rank() > rank || v.rank() > rank) {
    throw DomainError("word rank exceeds the requested rank");
  }
  Rng rng(seed);
  ProbabilisticVerdict out;
  for (int t = 0; t < trials; ++t) {
    auto rep = random_integer_representation(rank, rng);
    Integer tu = rep.trace(u);
    Integer tv = rep.trace(v);
    out.trials = t + 1;
    if (tu != tv) {
      out.kind = ProbabilisticVerdict::Kind::Distinct;
      out.witness = std::move(rep);
      out.trace_u = tu;
      out.trace_v = tv;
      return out;
    }
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// The two-parameter triangular family
////////////////////////////////////////////////////////////////////////////

// rho(a) = [[lambda, T], [0, 1/lambda]], rho(b) = [[mu, 0], [T, 1/mu]].
template <class S>
struct HorowitzFamilyPoint {
  S lambda;
  S mu;
  S t;
};

template <class S>
void check_family_parameter(S const& v, char const* name) {
  using Tr = ScalarTraits<S>;
  if (Tr::is_zero(v) || Tr::is_zero(v * v - S(1))) {
    throw DomainError(std::string(name) + " must not be 0, 1 or -1");
  }
}

template <class S>
Representation<S> horowitz_rep(HorowitzFamilyPoint<S> const& pt) {
  check_family_parameter(pt.lambda, "lambda");
  check_family_parameter(pt.mu, "mu");
  S one(1);
  S li = one / pt.lambda;
  S mi = one / pt.mu;
  return Representation<S>({Mat2<S>{pt.lambda, pt.t, S(0), li}, Mat2<S>{pt.mu, S(0), pt.t, mi}});
}

// tr rho(w) over the family as a polynomial in T, for fixed numeric
// lambda and mu.
inline TPoly trace_poly_in_T(Word const& w, Rational const& lambda, Rational const& mu) {
  if (w.rank() != 2) {
    throw DomainError("trace_poly_in_T requires a rank-2 word");
  }
  check_family_parameter(lambda, "lambda");
  check_family_parameter(mu, "mu");
  TPoly T = TPoly::indeterminate();
  Rational li = 1 / lambda;
  Rational mi = 1 / mu;
  Representation<TPoly> rep(
      {Mat2<TPoly>{TPoly(lambda), T, TPoly(), TPoly(li)},
       Mat2<TPoly>{TPoly(mu), TPoly(), T, TPoly(mi)}});
  return rep.trace(w);
}

// prod_j (lambda^{m_j} - lambda^{-m_j})/(lambda - lambda^{-1})
//      * (mu^{n_j} - mu^{-n_j})/(mu - mu^{-1})
inline Rational leading_coeff_formula(std::vector<int> const& m, std::vector<int> const& n,
                                      Rational const& lambda, Rational const& mu) {
  if (m.size() != n.size()) {
    throw DomainError("exponent vectors must have equal length");
  }
  check_family_parameter(lambda, "lambda");
  check_family_parameter(mu, "mu");
  auto ratio = [](Rational const& base, int e) {
    if (e == 0) {
      throw DomainError("exponents must be nonzero");
    }
    Rational pw = 1;
    for (int i = 0; i < std::abs(e); ++i) pw *= base;
    if (e < 0) pw = 1 / pw;
    Rational num = pw - 1 / pw;
    Rational den = base - 1 / base;
    return Rational(num / den);
  };
  Rational acc = 1;
  for (std::size_t j = 0; j < m.size(); ++j) {
    acc *= ratio(lambda, m[j]);
    acc *= ratio(mu, n[j]);
  }
  return acc;
}

}  // namespace horowitz

#endif  // HOROWITZ_TRACES_HPP_
