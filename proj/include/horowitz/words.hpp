// Free-group words: parsing, free and cyclic reduction, canonical curve
// classes (conjugacy plus inversion), syllable decomposition, enumeration.
//
// Letters are encoded as 2 * generator + (inverse ? 1 : 0), so that the
// natural integer order is a < A < b < B < c < ... This is the order used
// for every canonical form in the library.

#ifndef HOROWITZ_WORDS_HPP_
#define HOROWITZ_WORDS_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horowitz/error.hpp"

namespace horowitz {

inline constexpr int kMaxRank = 26;

class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::uint8_t>(2 * generator + (sign < 0 ? 1 : 0))) {}

  static constexpr Letter from_code(std::uint8_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int generator() const noexcept {
    return code_ >> 1;
  }
  constexpr int sign() const noexcept {
    return (code_ & 1) ? -1 : 1;
  }
  constexpr bool is_inverse() const noexcept {
    return code_ & 1;
  }
  constexpr std::uint8_t code() const noexcept {
    return code_;
  }
  constexpr Letter inverse() const noexcept {
    return from_code(code_ ^ 1);
  }
  constexpr Letter positive() const noexcept {
    return from_code(code_ & ~std::uint8_t{1});
  }
  char to_char() const noexcept {
    char c = static_cast<char>('a' + generator());
    return is_inverse() ? static_cast<char>(c - 'a' + 'A') : c;
  }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint8_t code_ = 0;
};

using Letters = std::vector<Letter>;

namespace detail {

  inline void check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank) {
      throw DomainError("rank must be in [1, 26], got " + std::to_string(rank));
    }
  }

  // Stack-based free reduction; the result is independent of the order in
  // which cancellations are performed.
  inline Letters free_reduce(std::span<Letter const> in) {
    Letters out;
    out.reserve(in.size());
    for (Letter l : in) {
      if (!out.empty() && out.back() == l.inverse()) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  inline Letters inverse_letters(std::span<Letter const> in) {
    Letters out(in.rbegin(), in.rend());
    for (Letter& l : out) {
      l = l.inverse();
    }
    return out;
  }

  // Booth's algorithm: start index of the lexicographically least rotation.
  inline std::size_t least_rotation(std::span<Letter const> s) {
    std::size_t const n = s.size();
    if (n == 0) {
      return 0;
    }
    std::vector<std::ptrdiff_t> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
      Letter sj = s[j % n];
      std::ptrdiff_t i = f[j - k - 1];
      while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
        if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) {
          k = j - static_cast<std::size_t>(i) - 1;
        }
        i = f[static_cast<std::size_t>(i)];
      }
      if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
        if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) {
          k = j;
        }
        f[j - k] = -1;
      } else {
        f[j - k] = i + 1;
      }
    }
    return k;
  }

  inline Letters rotate_letters(std::span<Letter const> s, std::size_t start) {
    Letters out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.push_back(s[(start + i) % s.size()]);
    }
    return out;
  }

  // Minimum over all rotations of s and of s^{-1}. s must be cyclically
  // reduced.
  inline Letters canonical_cyclic(std::span<Letter const> s) {
    Letters fwd = rotate_letters(s, least_rotation(s));
    Letters inv = inverse_letters(s);
    Letters bwd = rotate_letters(inv, least_rotation(inv));
    return std::min(fwd, bwd);
  }

  inline bool is_cyclically_reduced(std::span<Letter const> s) {
    return s.size() < 2 || s.front() != s.back().inverse();
  }

  // Smallest period k (dividing n) of the cyclic sequence.
  inline std::size_t smallest_period(std::span<Letter const> s) {
    std::size_t const n = s.size();
    for (std::size_t k = 1; k < n; ++k) {
      if (n % k != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = k; i < n && periodic; ++i) {
        periodic = s[i] == s[i - k];
      }
      if (periodic) {
        return k;
      }
    }
    return n;
  }

}  // namespace detail

// Freely reduced word in a free group of the given rank. Immutable value.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {
    detail::check_rank(rank);
  }
  Word(std::span<Letter const> letters, int rank)
      : letters_(detail::free_reduce(letters)), rank_(rank) {
    detail::check_rank(rank);
    for (Letter l : letters_) {
      if (l.generator() >= rank) {
        throw DomainError("letter '" + std::string(1, l.to_char()) +
                          "' outside rank " + std::to_string(rank));
      }
    }
  }
  Word(std::initializer_list<Letter> letters, int rank)
      : Word(std::span<Letter const>(letters.begin(), letters.size()), rank) {}

  int rank() const noexcept {
    return rank_;
  }
  std::size_t size() const noexcept {
    return letters_.size();
  }
  bool empty() const noexcept {
    return letters_.empty();
  }
  Letter operator[](std::size_t i) const {
    return letters_[i];
  }
  std::span<Letter const> letters() const noexcept {
    return letters_;
  }

  friend bool operator==(Word const&, Word const&) = default;

  // Shortlex.
  friend bool operator<(Word const& x, Word const& y) {
    if (x.size() != y.size()) {
      return x.size() < y.size();
    }
    return x.letters_ < y.letters_;
  }

 private:
  Letters letters_;
  int rank_ = 2;
};

// Nonempty cyclically reduced word; represents a conjugacy class together
// with a chosen rotation.
class CyclicWord {
 public:
  CyclicWord(std::span<Letter const> letters, int rank)
      : word_(letters, rank) {
    if (word_.empty()) {
      throw DomainError("cyclic word must be nonempty");
    }
    if (!detail::is_cyclically_reduced(word_.letters()) ||
        word_.size() != letters.size()) {
      throw DomainError("cyclic word must be cyclically reduced");
    }
  }

  int rank() const noexcept {
    return word_.rank();
  }
  std::size_t size() const noexcept {
    return word_.size();
  }
  Letter operator[](std::size_t i) const {
    return word_[i];
  }
  std::span<Letter const> letters() const noexcept {
    return word_.letters();
  }
  Word const& word() const noexcept {
    return word_;
  }

  friend bool operator==(CyclicWord const&, CyclicWord const&) = default;

 private:
  Word word_;
};

// Unoriented free-homotopy class of a maximal (non-power) element: the
// minimum over all rotations of a cyclic word and of its inverse.
class CurveClass {
 public:
  CyclicWord const& canonical() const noexcept {
    return canonical_;
  }
  Word const& word() const noexcept {
    return canonical_.word();
  }
  int rank() const noexcept {
    return canonical_.rank();
  }
  std::size_t size() const noexcept {
    return canonical_.size();
  }

  friend bool operator==(CurveClass const& x, CurveClass const& y) {
    return x.canonical_ == y.canonical_;
  }
  friend bool operator<(CurveClass const& x, CurveClass const& y) {
    return x.word() < y.word();
  }

  // Trusts the caller: `canonical` must already be canonical and primitive.
  static CurveClass from_canonical_unchecked(CyclicWord canonical) {
    return CurveClass(std::move(canonical));
  }

 private:
  explicit CurveClass(CyclicWord c) : canonical_(std::move(c)) {}
  CyclicWord canonical_;
};

struct ProperPower {
  bool is_power = false;
  std::optional<CyclicWord> root;
  int exponent = 1;
};

class ProperPowerError : public DomainError {
 public:
  ProperPowerError(std::string const& what, CyclicWord root, int exponent)
      : DomainError(what), root_(std::move(root)), exponent_(exponent) {}
  CyclicWord const& root() const noexcept {
    return root_;
  }
  int exponent() const noexcept {
    return exponent_;
  }

 private:
  CyclicWord root_;
  int exponent_;
};

inline Word invert(Word const& w) {
  return Word(detail::inverse_letters(w.letters()), w.rank());
}

// Letters in reverse order, each keeping its sign.
inline Word reverse(Word const& w) {
  Letters r(w.letters().rbegin(), w.letters().rend());
  return Word(r, w.rank());
}

inline Word operator*(Word const& x, Word const& y) {
  if (x.rank() != y.rank()) {
    throw DomainError("rank mismatch in word product");
  }
  Letters all(x.letters().begin(), x.letters().end());
  all.insert(all.end(), y.letters().begin(), y.letters().end());
  return Word(all, x.rank());
}

inline Word power(Word const& w, int k) {
  Word base = k < 0 ? invert(w) : w;
  Word out(w.rank());
  for (int i = 0; i < (k < 0 ? -k : k); ++i) {
    out = out * base;
  }
  return out;
}

// Conjugates away matching first/last inverse pairs. Returns the empty
// optional for the trivial class.
inline std::optional<CyclicWord> try_cyclic_reduce(Word const& w) {
  auto s = w.letters();
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  if (hi == lo) {
    return std::nullopt;
  }
  return CyclicWord(s.subspan(lo, hi - lo), w.rank());
}

inline CyclicWord cyclic_reduce(Word const& w) {
  auto c = try_cyclic_reduce(w);
  if (!c) {
    throw DomainError("trivial word has no cyclic reduction");
  }
  return *c;
}

inline ProperPower is_proper_power(CyclicWord const& cw) {
  std::size_t k = detail::smallest_period(cw.letters());
  if (k == cw.size()) {
    return {};
  }
  return ProperPower{true, CyclicWord(cw.letters().first(k), cw.rank()),
                     static_cast<int>(cw.size() / k)};
}

inline std::string to_string(Word const& w);

inline CurveClass canonical_class(Word const& w) {
  auto cw = try_cyclic_reduce(w);
  if (!cw) {
    throw DomainError("trivial word does not define a curve");
  }
  auto pp = is_proper_power(*cw);
  if (pp.is_power) {
    throw ProperPowerError("word is a proper power (exponent " +
                               std::to_string(pp.exponent) + " of " +
                               to_string(pp.root->word()) + ")",
                           *pp.root, pp.exponent);
  }
  return CurveClass::from_canonical_unchecked(
      CyclicWord(detail::canonical_cyclic(cw->letters()), w.rank()));
}

// Canonical cyclic form without the primitivity requirement.
inline CyclicWord canonical_cyclic_word(CyclicWord const& cw) {
  return CyclicWord(detail::canonical_cyclic(cw.letters()), cw.rank());
}

////////////////////////////////////////////////////////////////////////////
// Text format
////////////////////////////////////////////////////////////////////////////

// word := token+ ; token := letter ('^' signed-integer)?
// Lowercase letters are generators, uppercase their inverses; whitespace is
// ignored; exponent 0 contributes nothing.
inline Word parse_word(std::string_view text, int rank) {
  detail::check_rank(rank);
  Letters letters;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) {
      ++i;
    }
  };
  skip_ws();
  if (i == text.size()) {
    throw ParseError("empty word text");
  }
  while (i < text.size()) {
    char c = text[i];
    Letter letter;
    if (c >= 'a' && c <= 'z') {
      letter = Letter(c - 'a', 1);
    } else if (c >= 'A' && c <= 'Z') {
      letter = Letter(c - 'A', -1);
    } else {
      throw ParseError("unknown letter '" + std::string(1, c) + "' at offset " +
                       std::to_string(i));
    }
    if (letter.generator() >= rank) {
      throw ParseError("letter '" + std::string(1, c) + "' exceeds rank " +
                       std::to_string(rank));
    }
    ++i;
    skip_ws();
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
      }
      std::size_t start = i;
      long value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000) {
          throw ParseError("exponent too large");
        }
        ++i;
      }
      if (i == start) {
        throw ParseError("missing exponent after '^'");
      }
      exponent = negative ? -value : value;
      skip_ws();
    }
    Letter l = exponent < 0 ? letter.inverse() : letter;
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
      letters.push_back(l);
    }
  }
  return Word(letters, rank);
}

// Run-length rendering, e.g. "a^2bA^3"; the empty word renders as "1".
inline std::string to_string(Word const& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  auto s = w.letters();
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) {
      ++j;
    }
    out += s[i].to_char();
    if (j - i > 1) {
      out += '^';
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

inline std::string to_string(CyclicWord const& w) {
  return to_string(w.word());
}

inline std::string to_string(CurveClass const& c) {
  return to_string(c.word());
}

inline std::ostream& operator<<(std::ostream& os, Word const& w) {
  return os << to_string(w);
}

inline std::ostream& operator<<(std::ostream& os, CurveClass const& c) {
  return os << to_string(c);
}

////////////////////////////////////////////////////////////////////////////
// Syllables
////////////////////////////////////////////////////////////////////////////

struct Syllable {
  int generator;
  int exponent;
  friend bool operator==(Syllable const&, Syllable const&) = default;
};

struct SyllableForm {
  std::vector<Syllable> syllables;
  // Number of (a, b) syllable pairs for a two-generator word, else 0.
  int pairs = 0;
};

// Cyclic syllable decomposition starting at the first syllable boundary at
// or after position 0.
inline SyllableForm syllables(CyclicWord const& cw) {
  auto s = cw.letters();
  std::size_t const n = s.size();
  std::size_t start = 0;
  while (start < n && s[start].generator() == s[(start + n - 1) % n].generator()) {
    ++start;
  }
  SyllableForm out;
  if (start == n) {
    // Single generator throughout.
    out.syllables.push_back({s[0].generator(), static_cast<int>(n) * s[0].sign()});
    return out;
  }
  for (std::size_t k = 0; k < n;) {
    Letter first = s[(start + k) % n];
    int e = 0;
    while (k < n && s[(start + k) % n].generator() == first.generator()) {
      e += s[(start + k) % n].sign();
      ++k;
    }
    out.syllables.push_back({first.generator(), e});
  }
  if (cw.rank() == 2 && out.syllables.size() % 2 == 0) {
    out.pairs = static_cast<int>(out.syllables.size() / 2);
  }
  return out;
}

struct ExponentVectors {
  std::vector<int> m;  // exponents of a
  std::vector<int> n;  // exponents of b
};

// For a rank-2 cyclic word containing both generators, the vectors
// (m_1..m_p), (n_1..n_p) of w = a^m1 b^n1 ... a^mp b^np, read from the first
// a-syllable at or after position 0. Returns nullopt for a single-generator
// word.
inline std::optional<ExponentVectors> exponent_vectors(CyclicWord const& cw) {
  if (cw.rank() != 2) {
    throw DomainError("exponent vectors require rank 2");
  }
  SyllableForm f = syllables(cw);
  if (f.syllables.size() < 2) {
    return std::nullopt;
  }
  std::size_t first_a = 0;
  while (f.syllables[first_a].generator != 0) {
    ++first_a;
  }
  ExponentVectors ev;
  std::size_t const k = f.syllables.size();
  for (std::size_t i = 0; i < k; ++i) {
    Syllable const& syl = f.syllables[(first_a + i) % k];
    (syl.generator == 0 ? ev.m : ev.n).push_back(syl.exponent);
  }
  return ev;
}

// a^m1 b^n1 ... a^mp b^np
inline Word word_from_exponents(std::span<int const> m, std::span<int const> n) {
  if (m.size() != n.size()) {
    throw DomainError("exponent vectors must have equal length");
  }
  Letters letters;
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (int k = 0; k < std::abs(m[j]); ++k) {
      letters.emplace_back(0, m[j]);
    }
    for (int k = 0; k < std::abs(n[j]); ++k) {
      letters.emplace_back(1, n[j]);
    }
  }
  return Word(letters, 2);
}

////////////////////////////////////////////////////////////////////////////
// Enumeration
////////////////////////////////////////////////////////////////////////////

namespace detail {

  // Depth-first generation of canonical cyclic words of exactly `length`,
  // in lexicographic order, restricted to those starting with `prefix`.
  class ClassEnumerator {
   public:
    ClassEnumerator(std::size_t length, int rank, bool include_powers,
                    std::function<void(CyclicWord const&)> const& emit)
        : length_(length), rank_(rank), include_powers_(include_powers), emit_(emit) {}

    void run(Letters prefix) {
      buf_ = std::move(prefix);
      for (std::size_t i = 0; i < buf_.size(); ++i) {
        if (i > 0 && buf_[i] == buf_[i - 1].inverse()) {
          return;
        }
        if (!prefix_ok(i + 1)) {
          return;
        }
      }
      extend();
    }

   private:
    // Prunes prefixes that cannot be the least rotation of the word or of
    // its inverse: some proper suffix (read forwards), or some prefix read
    // backwards and inverted, is strictly smaller than the same-length
    // prefix.
    bool prefix_ok(std::size_t k) const {
      for (std::size_t i = 1; i < k; ++i) {
        for (std::size_t t = 0; i + t < k; ++t) {
          if (buf_[i + t] != buf_[t]) {
            if (buf_[i + t] < buf_[t]) {
              return false;
            }
            break;
          }
        }
      }
      for (std::size_t j = 0; j < k; ++j) {
        // inv(buf[j]) inv(buf[j-1]) ... inv(buf[0]) against buf[0..j]
        for (std::size_t t = 0; t <= j; ++t) {
          Letter back = buf_[j - t].inverse();
          if (back != buf_[t]) {
            if (back < buf_[t]) {
              return false;
            }
            break;
          }
        }
      }
      return true;
    }

    void extend() {
      if (buf_.size() == length_) {
        finish();
        return;
      }
      for (int code = 0; code < 2 * rank_; ++code) {
        Letter l = Letter::from_code(static_cast<std::uint8_t>(code));
        if (!buf_.empty() && l == buf_.back().inverse()) {
          continue;
        }
        buf_.push_back(l);
        if (prefix_ok(buf_.size())) {
          extend();
        }
        buf_.pop_back();
      }
    }

    void finish() {
      if (!is_cyclically_reduced(buf_)) {
        return;
      }
      if (canonical_cyclic(buf_) != buf_) {
        return;
      }
      if (!include_powers_ && smallest_period(buf_) != buf_.size()) {
        return;
      }
      emit_(CyclicWord(buf_, rank_));
    }

    std::size_t length_;
    int rank_;
    bool include_powers_;
    std::function<void(CyclicWord const&)> const& emit_;
    Letters buf_;
  };

}  // namespace detail

struct EnumerationOptions {
  bool include_powers = false;
};

// Canonical classes of exactly `length` whose canonical word starts with
// `prefix`. Used to partition enumeration across workers.
inline void for_each_class_of_length(std::size_t length, int rank, Letters const& prefix,
                                     std::function<void(CurveClass const&)> const& fn,
                                     EnumerationOptions opts = {}) {
  detail::check_rank(rank);
  if (prefix.size() > length) {
    return;
  }
  std::function<void(CyclicWord const&)> emit = [&](CyclicWord const& cw) {
    fn(CurveClass::from_canonical_unchecked(cw));
  };
  detail::ClassEnumerator(length, rank, opts.include_powers, emit).run(prefix);
}

// Every unoriented primitive conjugacy class of cyclic length <= max_len
// exactly once, ordered by length then lexicographically. With
// include_powers the proper powers are emitted as well (their "classes" are
// canonical cyclic words, not curves).
inline void for_each_class(std::size_t max_len, int rank,
                           std::function<void(CurveClass const&)> const& fn,
                           EnumerationOptions opts = {}) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    for_each_class_of_length(len, rank, {}, fn, opts);
  }
}

inline std::vector<CurveClass> enumerate_classes(std::size_t max_len, int rank,
                                                 EnumerationOptions opts = {}) {
  std::vector<CurveClass> out;
  for_each_class(max_len, rank, [&](CurveClass const& c) { out.push_back(c); }, opts);
  return out;
}

// Every freely reduced word of length exactly `length` (in lexicographic
// order of letter codes).
inline void for_each_reduced_word(std::size_t length, int rank,
                                  std::function<void(Word const&)> const& fn) {
  detail::check_rank(rank);
  Letters buf;
  std::function<void()> rec = [&] {
    if (buf.size() == length) {
      fn(Word(buf, rank));
      return;
    }
    for (int code = 0; code < 2 * rank; ++code) {
      Letter l = Letter::from_code(static_cast<std::uint8_t>(code));
      if (!buf.empty() && l == buf.back().inverse()) {
        continue;
      }
      buf.push_back(l);
      rec();
      buf.pop_back();
    }
  };
  rec();
}

}  // namespace horowitz

template <>
struct std::hash<horowitz::Word> {
  std::size_t operator()(horowitz::Word const& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w.letters()) {
      h = (h ^ l.code()) * 1099511628211ull;
    }
    return h;
  }
};

template <>
struct std::hash<horowitz::CurveClass> {
  std::size_t operator()(horowitz::CurveClass const& c) const noexcept {
    return std::hash<horowitz::Word>{}(c.word());
  }
};

#endif  // HOROWITZ_WORDS_HPP_
