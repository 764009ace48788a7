#ifndef CSLRANK_DEMOS_HPP
#define CSLRANK_DEMOS_HPP

#include <functional>
#include <string>
#include <vector>

#include "cslrank/reconstruct.hpp"

namespace cslrank {

// Lattice from 1-based generator lists.
SubspaceLattice lattice_1based(std::size_t n, const std::vector<std::vector<std::size_t>>& generators);

// Every coordinate set S with (i, j) allowed and j in S implying i in S:
// the invariant-subspace lattice of the pattern, coordinates 1-based.
SubspaceLattice lattice_from_pattern(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pattern);

// Map whose image of each allowed source unit E_ij (0-based) is rule(i, j).
MapSpec spec_from_rule(const SubspaceLattice& source, const SubspaceLattice& target,
                       const std::function<Matrix(std::size_t, std::size_t)>& rule);

// A -> U A V^*, or A -> U A^T V^* when twisted.
MapSpec implemented_spec(const SubspaceLattice& source, const SubspaceLattice& target, const Matrix& u,
                         const Matrix& v, Mode mode = Mode::consistent);

// Built-in examples: a4-phi1, a4-phi2, nest-shift, ainf-diag,
// isolated-diag, mixed-blocks.
const std::vector<std::string>& demo_names();
MapSpec demo_spec(const std::string& name);  // throws InputError for unknown names

// E11 -> E11, E22 -> E11 on the 2x2 diagonal algebra.
MapSpec collapse_spec();
// Identity on the six-coordinate ring lattice with the corner unit scaled
// by 2: every local check passes, one lambda cycle does not.
MapSpec perturbed_cycle_spec();

// "5/5 consistent, irreducible (1 component)"
std::string classification_summary(const Classification& c, const ChainGraph& g);

// Classification table, decomposition, components with lambda edges, cycle
// check and verification, one line per entry.
std::vector<std::string> describe_pipeline(const PipelineResult& r);

struct DemoCheck {
  std::string label;
  bool ok = false;
};

struct DemoReport {
  std::string name;
  std::vector<std::string> lines;
  std::vector<DemoCheck> checks;
  PipelineResult pipeline;

  bool ok() const;
};

// Runs the full pipeline and compares against the stated implementing
// operators. Deterministic.
DemoReport run_demo_report(const std::string& name, bool parallel = false);

// The one scalar c with u = c * reference, if any (u, reference of equal shape).
std::optional<Scalar> matrix_multiple(const Matrix& u, const Matrix& reference);

// reference restricted to the given columns.
Matrix select_columns(const Matrix& reference, const CoordSet& columns);

}  // namespace cslrank

#endif  // CSLRANK_DEMOS_HPP
