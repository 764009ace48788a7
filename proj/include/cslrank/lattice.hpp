#ifndef CSLRANK_LATTICE_HPP
#define CSLRANK_LATTICE_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cslrank/errors.hpp"

namespace cslrank {

/*
 * Commutative subspace lattices in their diagonal model.
 *
 * Every finite-dimensional CSL is simultaneously diagonalizable, so a
 * lattice element is identified with a set of standard-basis coordinates
 * (the range of a diagonal projection). Meet and join are intersection and
 * union; commutativity and complete distributivity hold by construction.
 *
 * Coordinates are 0-based in the API and printed 1-based.
 */
class CoordSet {
 public:
  CoordSet() = default;
  // Throws InputError for coordinates >= n. Members are sorted and deduplicated.
  CoordSet(std::size_t n, std::vector<std::size_t> members);
  CoordSet(std::size_t n, std::initializer_list<std::size_t> members)
      : CoordSet(n, std::vector<std::size_t>(members)) {}

  static CoordSet empty(std::size_t n) { return CoordSet(n, std::vector<std::size_t>{}); }
  static CoordSet full(std::size_t n);
  static CoordSet single(std::size_t n, std::size_t k) { return CoordSet(n, {k}); }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool is_empty() const { return members_.empty(); }
  bool is_full() const { return members_.size() == n_; }
  bool contains(std::size_t k) const;
  bool subset_of(const CoordSet& other) const;
  bool intersects(const CoordSet& other) const;
  std::size_t first() const { return members_.front(); }

  CoordSet complement() const;
  CoordSet minus(const CoordSet& other) const;

  // "{1,3}" (1-based).
  std::string to_string() const;

  friend bool operator==(const CoordSet&, const CoordSet&) = default;
  // Canonical order: by cardinality, then lexicographically.
  friend std::strong_ordering operator<=>(const CoordSet& a, const CoordSet& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> members_;
};

// Plain lexicographic order on the sorted member lists.
bool lex_less(const CoordSet& a, const CoordSet& b);

// Throw DimensionError on mismatched ambient dimensions.
CoordSet meet(const CoordSet& a, const CoordSet& b);
CoordSet join(const CoordSet& a, const CoordSet& b);

bool comparable(const CoordSet& m, const CoordSet& n);

class SubspaceLattice {
 public:
  SubspaceLattice() = default;

  std::size_t ambient_dim() const { return n_; }
  // Canonically ordered (cardinality, then lexicographic); front() is the
  // empty set and back() the full set.
  const std::vector<CoordSet>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const CoordSet& m) const;

  friend SubspaceLattice closure(std::size_t n, const std::vector<CoordSet>& generators);

 private:
  std::size_t n_ = 0;
  std::vector<CoordSet> elements_;
};

// Smallest family containing the generators, the empty set and {1..n},
// closed under pairwise union and intersection. Throws InputError on
// generators from a different ambient dimension.
SubspaceLattice closure(std::size_t n, const std::vector<CoordSet>& generators);

// M_- : the union of all lattice members N that do not contain M.
// Throws MembershipError when M is not in the lattice.
CoordSet predecessor(const SubspaceLattice& lattice, const CoordSet& m);

// The co-support M_-^perp (complement of predecessor).
inline CoordSet co_support(const SubspaceLattice& lattice, const CoordSet& m) {
  return predecessor(lattice, m).complement();
}

// Members N with N != 0 and N_- != I, the lattice elements that carry
// rank-one operators of Alg L, together with their predecessors.
struct InterestingFamily {
  std::vector<CoordSet> members;
  std::vector<CoordSet> predecessors;

  std::size_t size() const { return members.size(); }
  CoordSet co_support(std::size_t k) const { return predecessors[k].complement(); }
  // Index of m in members, or size() when absent.
  std::size_t index_of(const CoordSet& m) const;
};

InterestingFamily interesting_family(const SubspaceLattice& lattice);

// Both joins  V{N : N_- != I}  and  V{N_-^perp : N != 0}  equal the
// whole space. Holds for every lattice produced by closure(); kept as a
// structural sanity check.
bool validate_cdl(const SubspaceLattice& lattice);

}  // namespace cslrank

#endif  // CSLRANK_LATTICE_HPP
