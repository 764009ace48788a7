#include "cslrank/lattice.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace cslrank {

CoordSet::CoordSet(std::size_t n, std::vector<std::size_t> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= n_) {
    throw InputError("coordinate " + std::to_string(members_.back() + 1) + " outside {1.." +
                     std::to_string(n_) + "}");
  }
}

CoordSet CoordSet::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  return CoordSet(n, std::move(all));
}

bool CoordSet::contains(std::size_t k) const { return std::binary_search(members_.begin(), members_.end(), k); }

bool CoordSet::subset_of(const CoordSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool CoordSet::intersects(const CoordSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

CoordSet CoordSet::complement() const { return CoordSet::full(n_).minus(*this); }

CoordSet CoordSet::minus(const CoordSet& other) const {
  std::vector<std::size_t> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return CoordSet(n_, std::move(out));
}

std::string CoordSet::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(members_[k] + 1);
  }
  return out + "}";
}

std::strong_ordering operator<=>(const CoordSet& a, const CoordSet& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.members_.size() <=> b.members_.size(); c != 0) return c;
  return a.members_ <=> b.members_;
}

bool lex_less(const CoordSet& a, const CoordSet& b) { return a.members() < b.members(); }

namespace {

void require_same_dim(const CoordSet& a, const CoordSet& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError("coordinate sets live in different dimensions (" + std::to_string(a.ambient_dim()) +
                         " vs " + std::to_string(b.ambient_dim()) + ")");
  }
}

}  // namespace

CoordSet meet(const CoordSet& a, const CoordSet& b) {
  require_same_dim(a, b);
  std::vector<std::size_t> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return CoordSet(a.ambient_dim(), std::move(out));
}

CoordSet join(const CoordSet& a, const CoordSet& b) {
  require_same_dim(a, b);
  std::vector<std::size_t> out;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(out));
  return CoordSet(a.ambient_dim(), std::move(out));
}

bool comparable(const CoordSet& m, const CoordSet& n) { return m.subset_of(n) || n.subset_of(m); }

bool SubspaceLattice::contains(const CoordSet& m) const {
  return std::binary_search(elements_.begin(), elements_.end(), m);
}

SubspaceLattice closure(std::size_t n, const std::vector<CoordSet>& generators) {
  std::set<CoordSet> family{CoordSet::empty(n), CoordSet::full(n)};
  for (const auto& g : generators) {
    if (g.ambient_dim() != n) {
      throw InputError("generator " + g.to_string() + " has ambient dimension " +
                       std::to_string(g.ambient_dim()) + ", expected " + std::to_string(n));
    }
    family.insert(g);
  }
  // Fixed point: each round adds unions and intersections of all pairs.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<CoordSet> current(family.begin(), family.end());
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        grew |= family.insert(join(current[a], current[b])).second;
        grew |= family.insert(meet(current[a], current[b])).second;
      }
    }
  }
  SubspaceLattice lattice;
  lattice.n_ = n;
  lattice.elements_.assign(family.begin(), family.end());
  return lattice;
}

CoordSet predecessor(const SubspaceLattice& lattice, const CoordSet& m) {
  if (!lattice.contains(m)) throw MembershipError(m.to_string() + " is not a lattice member");
  CoordSet acc = CoordSet::empty(lattice.ambient_dim());
  for (const auto& e : lattice.elements()) {
    if (!m.subset_of(e)) acc = join(acc, e);
  }
  return acc;
}

std::size_t InterestingFamily::index_of(const CoordSet& m) const {
  auto it = std::find(members.begin(), members.end(), m);
  return static_cast<std::size_t>(it - members.begin());
}

InterestingFamily interesting_family(const SubspaceLattice& lattice) {
  InterestingFamily family;
  for (const auto& e : lattice.elements()) {
    if (e.is_empty()) continue;
    CoordSet pred = predecessor(lattice, e);
    if (pred.is_full()) continue;
    family.members.push_back(e);
    family.predecessors.push_back(std::move(pred));
  }
  return family;
}

bool validate_cdl(const SubspaceLattice& lattice) {
  const std::size_t n = lattice.ambient_dim();
  CoordSet supports = CoordSet::empty(n);
  CoordSet co_supports = CoordSet::empty(n);
  for (const auto& e : lattice.elements()) {
    const CoordSet pred = predecessor(lattice, e);
    if (!pred.is_full()) supports = join(supports, e);
    if (!e.is_empty()) co_supports = join(co_supports, pred.complement());
  }
  return supports.is_full() && co_supports.is_full();
}

}  // namespace cslrank
