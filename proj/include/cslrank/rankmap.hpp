#ifndef CSLRANK_RANKMAP_HPP
#define CSLRANK_RANKMAP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cslrank/algebra.hpp"
#include "cslrank/exactlin.hpp"
#include "cslrank/lattice.hpp"

namespace cslrank {

using UnitIndex = std::pair<std::size_t, std::size_t>;

// "(i,j)" with 1-based indices.
std::string unit_label(const UnitIndex& u);

/// A linear map Phi: Alg L1 -> Alg L2 given by the images of the allowed
/// source matrix units. Missing images are zero; Phi extends linearly.
class MapSpec {
 public:
  MapSpec() = default;
  MapSpec(MaskAlgebra source, MaskAlgebra target) : source_(std::move(source)), target_(std::move(target)) {}

  const MaskAlgebra& source() const { return source_; }
  const MaskAlgebra& target() const { return target_; }
  std::size_t source_dim() const { return source_.dim(); }
  std::size_t target_dim() const { return target_.dim(); }

  // Throws MembershipError when (i, j) is not an allowed source unit and
  // DimensionError when the image is not target_dim() square.
  void set_image(std::size_t i, std::size_t j, Matrix image);
  // Image of E_ij; the zero matrix when no image was given.
  Matrix image(std::size_t i, std::size_t j) const;
  const std::map<UnitIndex, Matrix>& images() const { return images_; }

 private:
  MaskAlgebra source_;
  MaskAlgebra target_;
  std::map<UnitIndex, Matrix> images_;
};

struct ValidationReport {
  struct Offense {
    UnitIndex from;   // source unit
    UnitIndex entry;  // disallowed entry of its image in the target
  };
  bool ok = true;
  std::vector<Offense> offending;
  std::vector<std::string> problems;
};

ValidationReport validate(const MapSpec& spec);

// sum_ij A_ij Phi(E_ij). Throws MembershipError when A has disallowed support.
Matrix apply(const MapSpec& spec, const Matrix& a);

struct RankVerdict {
  enum class Outcome { refuted, probable };
  Outcome outcome = Outcome::probable;
  std::optional<Matrix> counterexample;
  std::optional<Matrix> image;
  std::size_t input_rank = 0;
  std::size_t image_rank = 0;
  std::string stage;  // which probe family produced the counterexample
  std::size_t probes = 0;

  bool refuted() const { return outcome == Outcome::refuted; }
};

/// Randomized rank-preservation test over exact arithmetic.
///
/// Probes, in order: every allowed unit, differences and sums of pairs of
/// units (skipped beyond 256 units), `trials` random rank-one members per
/// element of the interesting family, and `trials` random members of each
/// rank 2..max_rank. Any failure is a genuine counterexample; passing is
/// only probable. Throws InputError when max_rank exceeds min(n1, n2).
RankVerdict check_rank_preserving(const MapSpec& spec, std::size_t trials, std::size_t max_rank,
                                  std::uint64_t seed);

enum class Tag { consistent, twisted, isolated, ambiguous };

std::string to_string(Tag tag);

struct ElementClass {
  CoordSet element;
  CoordSet predecessor;
  Tag tag = Tag::ambiguous;
  std::string evidence;             // dependency pattern that decided the tag
  std::vector<std::string> trace;  // inheritance steps, if any
};

// Classify N from the images of x f^*, y f^*, x g^*, y g^* where xs holds
// one or two independent vectors of N and fs one or two of N_-^perp (two
// whenever the dimension allows). Throws NotRankPreserving when an image is
// not rank one or the dependency pattern matches neither mode.
ElementClass classify_with_vectors(const MapSpec& spec, const CoordSet& n, const std::vector<Vector>& xs,
                                   const std::vector<Vector>& fs);

// classify_with_vectors on the first standard basis vectors of the
// supports. Throws MembershipError unless N is in the interesting family.
ElementClass classify_element(const MapSpec& spec, const CoordSet& n);

struct Classification {
  InterestingFamily family;
  std::vector<ElementClass> entries;  // parallel to family.members
  std::vector<std::string> warnings;

  std::size_t count(Tag tag) const;
  const ElementClass& of(const CoordSet& n) const;
};

// Isolated elements first, then per-element classification, then
// downward inheritance of tags (a subset of a consistent element is
// consistent, likewise for twisted). Throws ConflictError when a
// non-isolated element would carry both tags.
Classification classify_all(const MapSpec& spec, bool parallel = false);

struct Decomposition {
  CoordSet isolated;    // M_i
  CoordSet consistent;  // M_c
  CoordSet twisted;     // M_t
  CoordSet ambiguous;
};

// Throws ViolationError when a consistent and a twisted non-isolated
// element overlap, or their co-supports overlap.
Decomposition decompose(const MapSpec& spec, const Classification& c);

}  // namespace cslrank

#endif  // CSLRANK_RANKMAP_HPP
