#ifndef CSLRANK_ALGEBRA_HPP
#define CSLRANK_ALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cslrank/exactlin.hpp"
#include "cslrank/lattice.hpp"

namespace cslrank {

/// Alg L in the diagonal model: the matrices supported on a fixed pattern
/// of allowed entries. (i, j) is allowed exactly when every lattice member
/// containing j also contains i, so the pattern is the incidence algebra of
/// a preorder and always contains the diagonal.
class MaskAlgebra {
 public:
  MaskAlgebra() = default;

  std::size_t dim() const { return n_; }
  const SubspaceLattice& lattice() const { return lattice_; }
  bool allowed(std::size_t i, std::size_t j) const { return allowed_[i * n_ + j]; }
  // Allowed pairs in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> allowed_pairs() const;
  std::size_t dimension() const;  // number of allowed entries

  // Smallest lattice member containing coordinate j.
  const CoordSet& hull(std::size_t j) const { return hulls_[j]; }

  // Rows of '*' (allowed) and '.' (forced zero).
  std::string star_pattern() const;

  friend MaskAlgebra mask(const SubspaceLattice& lattice);

 private:
  std::size_t n_ = 0;
  SubspaceLattice lattice_;
  std::vector<bool> allowed_;
  std::vector<CoordSet> hulls_;
};

MaskAlgebra mask(const SubspaceLattice& lattice);

// Intersection of all lattice members containing j (0-based). Throws
// InputError when j is out of range.
CoordSet smallest_containing(const SubspaceLattice& lattice, std::size_t j);

// Throws DimensionError unless A is dim() x dim().
bool is_member(const Matrix& a, const MaskAlgebra& algebra);

// Support of a vector as a coordinate set.
CoordSet support(const Vector& v);

struct RankOneWitness {
  Vector x;
  Vector f;
  CoordSet e;
};

/// Longstaff membership test for x f^*.
///
/// x f^* lies in Alg L iff some member E has x in E and f in E_-^perp. The
/// only candidate that matters is the smallest E containing supp(x): any
/// other candidate E' contains it, so predecessor monotonicity gives
/// E_- <= E'_-, i.e. E_-^perp is the largest admissible co-support. The
/// test is therefore exact, not a heuristic. Throws ZeroVectorError when x
/// or f vanishes.
std::optional<RankOneWitness> rank_one_member(const SubspaceLattice& lattice, const Vector& x, const Vector& f);

// Every allowed matrix unit is itself a rank-one member, so the rank-one
// span is the whole mask algebra. Finite-dimensional stand-in for weak
// density of the rank-one span.
bool span_check(const SubspaceLattice& lattice);

struct RandomMember {
  Matrix matrix;
  std::size_t achieved_rank = 0;
  bool exact = false;  // achieved_rank == requested rank
};

// A matrix of Alg L of the requested rank, built as a sum of rank-one
// members with random exact factors. Deterministic per seed. Throws
// UnachievableRank when target_rank exceeds the dimension.
RandomMember random_member(const MaskAlgebra& algebra, std::size_t target_rank, std::uint64_t seed);

}  // namespace cslrank

#endif  // CSLRANK_ALGEBRA_HPP
