#ifndef CSLRANK_TESTS_SUPPORT_HPP
#define CSLRANK_TESTS_SUPPORT_HPP

// Shared generators and independent oracles for the test binaries.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cslrank/algebra.hpp"
#include "cslrank/demos.hpp"
#include "cslrank/exactlin.hpp"
#include "cslrank/lattice.hpp"
#include "cslrank/random.hpp"
#include "cslrank/reconstruct.hpp"

namespace testing_support {

using namespace cslrank;

inline unsigned to_mask(const CoordSet& s) {
  unsigned m = 0;
  for (std::size_t k : s.members()) m |= 1U << k;
  return m;
}

inline CoordSet from_mask(std::size_t n, unsigned m) {
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < n; ++k)
    if (m & (1U << k)) members.push_back(k);
  return CoordSet(n, std::move(members));
}

// Brute-force closure on bitmasks: add every pairwise | and & until stable.
inline std::set<unsigned> brute_closure(std::size_t n, const std::vector<unsigned>& gens) {
  std::set<unsigned> fam(gens.begin(), gens.end());
  fam.insert(0);
  fam.insert((1U << n) - 1);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<unsigned> cur(fam.begin(), fam.end());
    for (unsigned a : cur)
      for (unsigned b : cur) grew |= fam.insert(a | b).second | fam.insert(a & b).second;
  }
  return fam;
}

// Union of members that do not contain m, straight from the definition.
inline unsigned brute_predecessor(const std::set<unsigned>& fam, unsigned m) {
  unsigned acc = 0;
  for (unsigned e : fam)
    if ((e & m) != m) acc |= e;
  return acc;
}

struct RandomLattice {
  std::size_t n;
  std::vector<unsigned> generators;
  SubspaceLattice lattice;
};

// n in [1, max_n], up to n + 1 random generators.
inline RandomLattice random_lattice(ExactRng& rng, std::size_t max_n = 8) {
  RandomLattice out;
  out.n = 1 + rng.index(max_n);
  const std::size_t count = rng.index(out.n + 2);
  std::vector<CoordSet> gens;
  for (std::size_t k = 0; k < count; ++k) {
    const unsigned m = static_cast<unsigned>(rng.index(1U << out.n));
    out.generators.push_back(m);
    gens.push_back(from_mask(out.n, m));
  }
  out.lattice = closure(out.n, gens);
  return out;
}

// Plain Gauss-Jordan rank with Scalar division: no fraction-free tricks.
inline std::size_t oracle_rank(Matrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c) / a(r, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline Matrix random_matrix(ExactRng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.scalar();
  return m;
}

// Invertible member of the mask algebra: nonzero diagonal plus random
// allowed entries, redrawn until invertible.
inline Matrix random_invertible_member(ExactRng& rng, const MaskAlgebra& alg) {
  const std::size_t n = alg.dim();
  for (;;) {
    Matrix m(n, n);
    for (const auto& [i, j] : alg.allowed_pairs()) m(i, j) = i == j ? rng.nonzero() : rng.scalar();
    if (oracle_rank(m) == n) return m;
  }
}

inline Matrix random_invertible(ExactRng& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    if (oracle_rank(m) == n) return m;
  }
}

// Matrix with the given columns of m.
inline Matrix columns_of(const Matrix& m, const CoordSet& cols) { return select_columns(m, cols); }

// A -> U A V^* on a random lattice with U, V^* invertible members, or
// A -> U A^T V^* into the full matrix algebra with U, V invertible.
struct RoundTrip {
  RandomLattice source;
  Mode mode = Mode::consistent;
  Matrix u;
  Matrix v;
  MapSpec spec;
};

inline RoundTrip make_round_trip(ExactRng& rng, Mode mode, std::size_t max_n = 8) {
  RoundTrip rt;
  rt.source = random_lattice(rng, max_n);
  rt.mode = mode;
  const std::size_t n = rt.source.n;
  if (mode == Mode::consistent) {
    const MaskAlgebra alg = mask(rt.source.lattice);
    rt.u = random_invertible_member(rng, alg);
    rt.v = random_invertible_member(rng, alg).adjoint();
    rt.spec = implemented_spec(rt.source.lattice, rt.source.lattice, rt.u, rt.v);
  } else {
    rt.u = random_invertible(rng, n);
    rt.v = random_invertible(rng, n);
    rt.spec = implemented_spec(rt.source.lattice, closure(n, {}), rt.u, rt.v, Mode::twisted);
  }
  return rt;
}

// Empty when the pipeline recovers a certified implementation whose blocks
// equal (c U, (1/conj c) V) on their columns and whose evaluation matches
// the ground truth on every allowed unit; otherwise the reason.
inline std::string check_round_trip(const RoundTrip& rt, const PipelineResult& r) {
  if (!r.cycles.ok) return "cycle check failed";
  if (!r.implementation || !r.report) return "no implementation";
  if (!r.report->ok) return "unit verification failed";
  if (r.implementation->certificate != "exact") return "not certified";
  for (const auto& b : r.implementation->blocks) {
    const auto c = matrix_multiple(b.u, columns_of(rt.u, b.u_domain()));
    if (!c) return "block " + b.g.to_string() + ": U not a multiple of the ground truth";
    if (!(b.v == columns_of(rt.v, b.v_domain()) * (Scalar(1) / *c).conj())) {
      return "block " + b.g.to_string() + ": V not the matching multiple";
    }
  }
  const std::size_t n = rt.source.n;
  const Matrix vstar = rt.v.adjoint();
  for (const auto& [i, j] : rt.spec.source().allowed_pairs()) {
    const Matrix e = Matrix::unit(n, n, i, j);
    const Matrix truth = rt.u * (rt.mode == Mode::consistent ? e : e.transpose()) * vstar;
    if (!(evaluate(*r.implementation, e) == truth)) return "evaluation differs at " + unit_label({i, j});
  }
  return {};
}

}  // namespace testing_support

#endif  // CSLRANK_TESTS_SUPPORT_HPP
