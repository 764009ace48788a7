#include "cslrank/algebra.hpp"

#include <sstream>

#include "cslrank/random.hpp"

namespace cslrank {

CoordSet smallest_containing(const SubspaceLattice& lattice, std::size_t j) {
  const std::size_t n = lattice.ambient_dim();
  if (j >= n) throw InputError("coordinate " + std::to_string(j + 1) + " outside {1.." + std::to_string(n) + "}");
  CoordSet acc = CoordSet::full(n);
  for (const auto& e : lattice.elements()) {
    if (e.contains(j)) acc = meet(acc, e);
  }
  return acc;
}

MaskAlgebra mask(const SubspaceLattice& lattice) {
  MaskAlgebra m;
  m.n_ = lattice.ambient_dim();
  m.lattice_ = lattice;
  m.allowed_.assign(m.n_ * m.n_, false);
  m.hulls_.reserve(m.n_);
  for (std::size_t j = 0; j < m.n_; ++j) {
    m.hulls_.push_back(smallest_containing(lattice, j));
    for (std::size_t i : m.hulls_.back().members()) m.allowed_[i * m.n_ + j] = true;
  }
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> MaskAlgebra::allowed_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (allowed(i, j)) out.emplace_back(i, j);
  return out;
}

std::size_t MaskAlgebra::dimension() const {
  std::size_t count = 0;
  for (bool b : allowed_) count += b ? 1 : 0;
  return count;
}

std::string MaskAlgebra::star_pattern() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) os << (j ? " " : "") << (allowed(i, j) ? '*' : '.');
    os << '\n';
  }
  return os.str();
}

bool is_member(const Matrix& a, const MaskAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  if (a.rows() != n || a.cols() != n) {
    throw DimensionError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!algebra.allowed(i, j) && !a(i, j).is_zero()) return false;
  return true;
}

CoordSet support(const Vector& v) {
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) members.push_back(k);
  return CoordSet(v.size(), std::move(members));
}

std::optional<RankOneWitness> rank_one_member(const SubspaceLattice& lattice, const Vector& x, const Vector& f) {
  if (x.is_zero() || f.is_zero()) throw ZeroVectorError("rank-one membership needs nonzero x and f");
  const std::size_t n = lattice.ambient_dim();
  if (x.size() != n || f.size() != n) throw DimensionError("vector length differs from lattice dimension");
  CoordSet e = CoordSet::empty(n);
  const CoordSet sx = support(x);
  for (std::size_t k : sx.members()) e = join(e, smallest_containing(lattice, k));
  if (support(f).intersects(predecessor(lattice, e))) return std::nullopt;
  return RankOneWitness{x, f, std::move(e)};
}

bool span_check(const SubspaceLattice& lattice) {
  const MaskAlgebra algebra = mask(lattice);
  const std::size_t n = lattice.ambient_dim();
  for (const auto& [i, j] : algebra.allowed_pairs()) {
    auto w = rank_one_member(lattice, Vector::basis(n, i), Vector::basis(n, j));
    if (!w || !is_member(outer(w->x, w->f), algebra)) return false;
  }
  return true;
}

RandomMember random_member(const MaskAlgebra& algebra, std::size_t target_rank, std::uint64_t seed) {
  const std::size_t n = algebra.dim();
  if (target_rank > n) {
    throw UnachievableRank("rank " + std::to_string(target_rank) + " exceeds dimension " + std::to_string(n));
  }
  if (target_rank == 0) return {Matrix::zero(n, n), 0, true};

  ExactRng rng(seed);
  const InterestingFamily family = interesting_family(algebra.lattice());
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Matrix a = Matrix::zero(n, n);
    for (std::size_t t = 0; t < target_rank; ++t) {
      const std::size_t k = rng.index(family.size());
      a += outer(rng.supported_on(family.members[k]), rng.supported_on(family.co_support(k)));
    }
    const std::size_t r = rank(a);
    if (r == target_rank) return {std::move(a), r, true};
  }
  // The diagonal is always allowed, so a random diagonal of the right rank
  // settles the target when the rank-one sums keep colliding.
  Matrix d = Matrix::zero(n, n);
  for (std::size_t k = 0; k < target_rank; ++k) d(k, k) = rng.nonzero();
  return {std::move(d), target_rank, true};
}

}  // namespace cslrank
