#ifndef CSLRANK_RECONSTRUCT_HPP
#define CSLRANK_RECONSTRUCT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cslrank/exactlin.hpp"
#include "cslrank/lattice.hpp"
#include "cslrank/rankmap.hpp"

namespace cslrank {

/*
 * Recovery of implementing operators.
 *
 * For a consistent element N the map acts on its rank-one operators as
 *
 *     Phi(x f^*) = U_N x (V_N f)^*          x in N, f in N_-^perp,
 *
 * with U_N, V_N linear. For a twisted element the roles swap and both maps
 * are conjugate linear:  Phi(x f^*) = U(f) V(x)^*.  Writing U(f) = U' conj(f)
 * and V(x) = V' conj(x) with linear U', V' gives
 *
 *     Phi(x f^*) = U' conj(f) x^T V'^* = U' (x f^*)^T V'^*,
 *
 * so a twisted block is evaluated as U A^T V^* with ordinary matrices; the
 * conjugations cancel in pairs. On matrix units: Phi(E_ij) = U e_j (V e_i)^*.
 *
 * Local factors of comparable elements differ by scalars lambda_MN; chains
 * of comparable elements glue them into one U, V per connected component,
 * and unit-level verification certifies Phi(A) = U A V^* on all of Alg L
 * because the units span it.
 */

enum class Mode { consistent, twisted };

std::string to_string(Mode mode);

struct LocalFactors {
  CoordSet element;
  Mode mode = Mode::consistent;
  // Coordinates indexing the columns of u and v. Consistent: u over N and v
  // over N_-^perp. Twisted: u over N_-^perp and v over N.
  std::vector<std::size_t> u_domain;
  std::vector<std::size_t> v_domain;
  Matrix u;
  Matrix v;
  std::size_t base_row = 0;  // x_1 coordinate
  std::size_t base_col = 0;  // f_1 coordinate

  // Column for a coordinate of the domain. Throws MembershipError otherwise.
  Vector u_at(std::size_t coord) const;
  Vector v_at(std::size_t coord) const;
};

// Throws NotRankPreserving when a needed image is not rank one and
// AlphaError when the factored form fails to reproduce some image.
LocalFactors local_factors(const MapSpec& spec, const CoordSet& n, Mode mode);

// lambda with U_M = lambda U_N on the shared U-domain and
// V_N = conj(lambda) V_M on the shared V-domain, for M <= N of equal mode.
// Throws CoherenceError when the ratios disagree.
Scalar lambda_edge(const LocalFactors& lower, const LocalFactors& upper);

struct ChainEdge {
  std::size_t lower = 0;  // node indices, nodes[lower] < nodes[upper]
  std::size_t upper = 0;
  Scalar lambda;          // lambda_{lower,upper}
};

struct ChainComponent {
  std::size_t root = 0;  // lexicographically least member
  std::vector<std::size_t> members;
  CoordSet g;            // union of members
  CoordSet f;            // union of co-supports
  Mode mode = Mode::consistent;
  bool isolated = false;
  bool mode_ambiguous = false;
};

struct ChainGraph {
  std::vector<CoordSet> nodes;  // the interesting family
  std::vector<Mode> modes;
  std::vector<LocalFactors> factors;
  std::vector<ChainEdge> edges;
  std::vector<ChainComponent> components;
  std::vector<std::size_t> component_of;
};

// Isolated and mode-ambiguous elements are realized in consistent mode.
// Throws OrthogonalityError when two components overlap.
ChainGraph chain_graph(const MapSpec& spec, const Classification& c);

struct CycleReport {
  bool ok = true;
  std::size_t cycles_checked = 0;
  std::vector<std::size_t> cycle;  // closed walk of node indices, on failure
  Scalar product{1};
};

// Checks the fundamental cycle of every non-tree edge of a BFS spanning
// tree per component; lambda products are multiplicative over the cycle
// space, so this covers every cycle.
CycleReport cycle_check(const ChainGraph& g);

struct Block {
  CoordSet g;
  CoordSet f;
  Mode mode = Mode::consistent;
  // Consistent: u columns follow g, v columns follow f.
  // Twisted: u columns follow f, v columns follow g.
  Matrix u;
  Matrix v;

  const CoordSet& u_domain() const { return mode == Mode::consistent ? g : f; }
  const CoordSet& v_domain() const { return mode == Mode::consistent ? f : g; }
};

struct Implementation {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<Block> blocks;
  std::string certificate = "none";  // "exact" once verified
  std::vector<std::string> flags;

  // n2 x n1 matrices collecting every block's columns at their coordinates.
  Matrix global_u() const;
  Matrix global_v() const;
};

// sum over blocks of U A|_block V^*  (U A|_block^T V^* for twisted blocks).
Matrix evaluate(const Implementation& impl, const Matrix& a);

// Global U, V per component via spanning-tree lambda products, then
// verify(). Throws CoherenceError when the cycle check fails or members
// disagree on a shared column, CoverageError if a coordinate is uncovered.
Implementation assemble(const MapSpec& spec, const ChainGraph& g);

struct VerifyReport {
  bool ok = true;  // every allowed unit reproduced exactly
  std::size_t units_checked = 0;
  std::vector<UnitIndex> failures;
  std::size_t u_rank = 0;
  std::size_t v_rank = 0;
  bool injective = false;  // global U and V have full column rank
  bool certified = false;  // ok && injective
  std::size_t image_dimension = 0;
  std::size_t target_dimension = 0;
  bool surjective() const { return image_dimension == target_dimension; }
};

VerifyReport verify(const MapSpec& spec, const Implementation& impl);

struct PsiResult {
  Matrix phi_identity;
  MapSpec composed;  // A -> Phi(A) Phi(I)^{-1}
  bool multiplicative = false;
  std::vector<std::string> failures;
  bool within_target = true;
  std::optional<bool> matches_similarity;  // vs A -> U A U^{-1}, when U is invertible
};

// Throws SingularError when Phi(I) is not invertible and DimensionError
// unless source and target algebras coincide.
PsiResult psi(const MapSpec& spec, const Implementation& impl);

// classify -> decompose -> chain graph -> cycle check -> assemble.
// Refutations surface as RefutationError subclasses; a failed cycle check
// leaves `implementation` empty.
struct PipelineResult {
  Classification classification;
  Decomposition decomposition;
  ChainGraph graph;
  CycleReport cycles;
  std::optional<Implementation> implementation;
  std::optional<VerifyReport> report;
};

PipelineResult reconstruct(const MapSpec& spec, bool parallel = false);

}  // namespace cslrank

#endif  // CSLRANK_RECONSTRUCT_HPP
