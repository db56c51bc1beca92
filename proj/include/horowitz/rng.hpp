// Seeded random source. The standard distributions are implementation
// defined, so bounded integers are drawn by rejection directly from the
// engine output; this makes every run reproducible across standard
// libraries.

#ifndef HOROWITZ_RNG_HPP_
#define HOROWITZ_RNG_HPP_

#include <cstdint>
#include <random>

namespace horowitz {

class Rng {
 public:
  static constexpr char const* kName = "mt19937_64/reject-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() {
    return engine_();
  }

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
      return static_cast<std::int64_t>(engine_());
    }
    std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

  // Uniform in [lo, hi] \ {0}.
  std::int64_t uniform_nonzero(std::int64_t lo, std::int64_t hi) {
    std::int64_t v;
    do {
      v = uniform(lo, hi);
    } while (v == 0);
    return v;
  }

  bool coin() {
    return (engine_() >> 63) != 0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace horowitz

#endif  // HOROWITZ_RNG_HPP_
