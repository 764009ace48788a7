#ifndef CSLRANK_RANDOM_HPP
#define CSLRANK_RANDOM_HPP

#include <cstdint>
#include <random>

#include "cslrank/exactlin.hpp"
#include "cslrank/lattice.hpp"

namespace cslrank {

// Small random Gaussian rationals for randomized identity testing. Entries
// are (a/b) + (c/d) i with |a|, |c| <= 9 and 1 <= b, d <= 4.
class ExactRng {
 public:
  explicit ExactRng(std::uint64_t seed) : engine_(seed) {}

  Scalar scalar() {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    const long a = num(engine_), b = den(engine_), c = num(engine_), d = den(engine_);
    return Scalar(Scalar::ratio(a, b).re(), Scalar::ratio(c, d).re());
  }

  Scalar nonzero() {
    for (;;) {
      Scalar s = scalar();
      if (!s.is_zero()) return s;
    }
  }

  // Random vector supported on `where`, never zero when `where` is nonempty.
  Vector supported_on(const CoordSet& where) {
    Vector v(where.ambient_dim());
    for (std::size_t k : where.members()) v[k] = scalar();
    if (!where.is_empty() && v.is_zero()) v[where.first()] = nonzero();
    return v;
  }

  std::size_t index(std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cslrank

#endif  // CSLRANK_RANDOM_HPP
