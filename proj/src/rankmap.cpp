#include "cslrank/rankmap.hpp"

#include <algorithm>
#include <future>

#include "cslrank/random.hpp"

namespace cslrank {

std::string unit_label(const UnitIndex& u) {
  return "(" + std::to_string(u.first + 1) + "," + std::to_string(u.second + 1) + ")";
}

void MapSpec::set_image(std::size_t i, std::size_t j, Matrix image) {
  if (i >= source_dim() || j >= source_dim() || !source_.allowed(i, j)) {
    throw MembershipError("source unit " + unit_label({i, j}) + " is not in the source algebra");
  }
  if (image.rows() != target_dim() || image.cols() != target_dim()) {
    throw DimensionError("image of " + unit_label({i, j}) + " must be " + std::to_string(target_dim()) + "x" +
                         std::to_string(target_dim()));
  }
  images_[{i, j}] = std::move(image);
}

Matrix MapSpec::image(std::size_t i, std::size_t j) const {
  auto it = images_.find({i, j});
  if (it == images_.end()) return Matrix::zero(target_dim(), target_dim());
  return it->second;
}

ValidationReport validate(const MapSpec& spec) {
  ValidationReport report;
  const std::size_t n2 = spec.target_dim();
  for (const auto& [from, img] : spec.images()) {
    if (img.rows() != n2 || img.cols() != n2) {
      report.ok = false;
      report.problems.push_back("image of " + unit_label(from) + " has wrong shape");
      continue;
    }
    for (std::size_t i = 0; i < n2; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        if (!img(i, j).is_zero() && !spec.target().allowed(i, j)) {
          report.ok = false;
          report.offending.push_back({from, {i, j}});
          report.problems.push_back("image of " + unit_label(from) + " has a nonzero entry at disallowed " +
                                    unit_label({i, j}));
        }
      }
    }
  }
  return report;
}

Matrix apply(const MapSpec& spec, const Matrix& a) {
  if (!is_member(a, spec.source())) throw MembershipError("operand is not in the source algebra");
  Matrix out = Matrix::zero(spec.target_dim(), spec.target_dim());
  for (const auto& [from, img] : spec.images()) {
    const Scalar& coeff = a(from.first, from.second);
    if (!coeff.is_zero()) out += img * coeff;
  }
  return out;
}

// ---------------------------------------------------------------- rank check

namespace {

struct Probe {
  RankVerdict* verdict;
  const MapSpec* spec;

  // True when the probe refutes rank preservation.
  bool operator()(const Matrix& a, const char* stage) const {
    ++verdict->probes;
    const std::size_t in = rank(a);
    Matrix img = apply(*spec, a);
    const std::size_t out = rank(img);
    if (in == out) return false;
    verdict->outcome = RankVerdict::Outcome::refuted;
    verdict->counterexample = a;
    verdict->image = std::move(img);
    verdict->input_rank = in;
    verdict->image_rank = out;
    verdict->stage = stage;
    return true;
  }
};

}  // namespace

RankVerdict check_rank_preserving(const MapSpec& spec, std::size_t trials, std::size_t max_rank,
                                  std::uint64_t seed) {
  const std::size_t n1 = spec.source_dim();
  if (max_rank > std::min(n1, spec.target_dim())) {
    throw InputError("max_rank " + std::to_string(max_rank) + " exceeds min(n1, n2)");
  }
  RankVerdict verdict;
  const Probe probe{&verdict, &spec};
  const auto units = spec.source().allowed_pairs();

  for (const auto& [i, j] : units) {
    if (probe(Matrix::unit(n1, n1, i, j), "unit")) return verdict;
  }
  constexpr std::size_t kPairLimit = 256;
  if (units.size() <= kPairLimit) {
    for (std::size_t a = 0; a < units.size(); ++a) {
      for (std::size_t b = a + 1; b < units.size(); ++b) {
        const Matrix ea = Matrix::unit(n1, n1, units[a].first, units[a].second);
        const Matrix eb = Matrix::unit(n1, n1, units[b].first, units[b].second);
        if (probe(ea - eb, "unit-pair")) return verdict;
        if (probe(ea + eb, "unit-pair")) return verdict;
      }
    }
  }

  ExactRng rng(seed);
  const InterestingFamily family = interesting_family(spec.source().lattice());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const CoordSet co = family.co_support(k);
    for (std::size_t t = 0; t < trials; ++t) {
      const Matrix a = outer(rng.supported_on(family.members[k]), rng.supported_on(co));
      if (probe(a, "rank-one")) return verdict;
    }
  }
  for (std::size_t r = 2; r <= max_rank; ++r) {
    for (std::size_t t = 0; t < trials; ++t) {
      const RandomMember m = random_member(spec.source(), r, rng.engine()());
      if (probe(m.matrix, "random-member")) return verdict;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------- classification

std::string to_string(Tag tag) {
  switch (tag) {
    case Tag::consistent: return "consistent";
    case Tag::twisted: return "twisted";
    case Tag::isolated: return "isolated";
    case Tag::ambiguous: return "ambiguous";
  }
  return "?";
}

namespace {

RankOneFactors rank_one_image(const MapSpec& spec, const CoordSet& n, const Vector& x, const Vector& f) {
  const Matrix img = apply(spec, outer(x, f));
  const std::size_t r = rank(img);
  if (r != 1) {
    throw NotRankPreserving("element " + n.to_string() + ": image of the rank-one x f^* with x=" + x.to_string() +
                            ", f=" + f.to_string() + " has rank " + std::to_string(r));
  }
  return rank_one_factor(img);
}

bool dep(const Vector& a, const Vector& b) { return collinear(a, b).has_value(); }

struct Relations {
  std::string text;

  bool check(const char* name, const Vector& a, const Vector& b) {
    const bool d = dep(a, b);
    if (!text.empty()) text += ' ';
    text += name[0];
    text += d ? "~" : "!~";
    text += name[1];
    return d;
  }
};

}  // namespace

ElementClass classify_with_vectors(const MapSpec& spec, const CoordSet& n, const std::vector<Vector>& xs,
                                   const std::vector<Vector>& fs) {
  const SubspaceLattice& lattice = spec.source().lattice();
  ElementClass out{n, predecessor(lattice, n), Tag::ambiguous, {}, {}};
  const CoordSet co = out.predecessor.complement();
  const bool wide_n = n.size() >= 2;
  const bool wide_co = co.size() >= 2;
  if (xs.size() != (wide_n ? 2u : 1u) || fs.size() != (wide_co ? 2u : 1u)) {
    throw InputError("classify: expected " + std::to_string(wide_n ? 2 : 1) + " vectors in N and " +
                     std::to_string(wide_co ? 2 : 1) + " in N_-^perp");
  }
  const auto reject = [&](const std::string& why) {
    throw NotRankPreserving("element " + n.to_string() + ": " + why);
  };

  if (wide_n && wide_co) {
    // (A) x f^* = u v^*, (B) y f^* = p q^*, (C) x g^* = w z^*, (D) y g^* = r s^*
    const auto [u, v] = rank_one_image(spec, n, xs[0], fs[0]);
    const auto [p, q] = rank_one_image(spec, n, xs[1], fs[0]);
    const auto [w, z] = rank_one_image(spec, n, xs[0], fs[1]);
    const auto [r, s] = rank_one_image(spec, n, xs[1], fs[1]);
    Relations rel;
    const bool uw = rel.check("uw", u, w), vq = rel.check("vq", v, q);
    const bool pr = rel.check("pr", p, r), zs = rel.check("zs", z, s);
    const bool vz = rel.check("vz", v, z), up = rel.check("up", u, p);
    const bool wr = rel.check("wr", w, r), qs = rel.check("qs", q, s);
    // Rank-two sums (A)+(D), (B)+(C) force these four to be independent.
    if (rel.check("ur", u, r) || rel.check("vs", v, s) || rel.check("pw", p, w) || rel.check("qz", q, z)) {
      reject("four-vector exclusion violated [" + rel.text + "]");
    }
    const bool consistent = uw && vq;
    const bool twisted = vz && up;
    if (consistent == twisted) reject("dependency pattern matches neither mode [" + rel.text + "]");
    if (consistent && !(pr && zs)) reject("incomplete consistent pattern [" + rel.text + "]");
    if (twisted && !(wr && qs)) reject("incomplete twisted pattern [" + rel.text + "]");
    out.tag = consistent ? Tag::consistent : Tag::twisted;
    out.evidence = rel.text;
  } else if (!wide_n && wide_co) {
    // (E) x f^* = u v^*, (F) x g^* = p q^*
    const auto [u, v] = rank_one_image(spec, n, xs[0], fs[0]);
    const auto [p, q] = rank_one_image(spec, n, xs[0], fs[1]);
    Relations rel;
    const bool up = rel.check("up", u, p);
    const bool vq = rel.check("vq", v, q);
    if (up == vq) reject("expected exactly one of u~p, v~q [" + rel.text + "]");
    out.tag = up ? Tag::consistent : Tag::twisted;
    out.evidence = rel.text;
  } else if (wide_n && !wide_co) {
    // (G) x f^* = u v^*, (H) y f^* = p q^*
    const auto [u, v] = rank_one_image(spec, n, xs[0], fs[0]);
    const auto [p, q] = rank_one_image(spec, n, xs[1], fs[0]);
    Relations rel;
    const bool up = rel.check("up", u, p);
    const bool vq = rel.check("vq", v, q);
    if (up == vq) reject("expected exactly one of u~p, v~q [" + rel.text + "]");
    out.tag = vq ? Tag::consistent : Tag::twisted;
    out.evidence = rel.text;
  } else {
    rank_one_image(spec, n, xs[0], fs[0]);
    out.tag = Tag::ambiguous;
    out.evidence = "1x1 block";
  }
  return out;
}

ElementClass classify_element(const MapSpec& spec, const CoordSet& n) {
  const SubspaceLattice& lattice = spec.source().lattice();
  if (n.is_empty() || !lattice.contains(n)) throw MembershipError(n.to_string() + " is not in the interesting family");
  const CoordSet co = co_support(lattice, n);
  if (co.is_empty()) throw MembershipError(n.to_string() + " is not in the interesting family");
  const std::size_t dim = lattice.ambient_dim();
  std::vector<Vector> xs, fs;
  for (std::size_t k = 0; k < std::min<std::size_t>(2, n.size()); ++k) xs.push_back(Vector::basis(dim, n.members()[k]));
  for (std::size_t k = 0; k < std::min<std::size_t>(2, co.size()); ++k) fs.push_back(Vector::basis(dim, co.members()[k]));
  return classify_with_vectors(spec, n, xs, fs);
}

std::size_t Classification::count(Tag tag) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [tag](const ElementClass& e) { return e.tag == tag; }));
}

const ElementClass& Classification::of(const CoordSet& n) const {
  const std::size_t k = family.index_of(n);
  if (k == family.size()) throw MembershipError(n.to_string() + " is not in the interesting family");
  return entries[k];
}

Classification classify_all(const MapSpec& spec, bool parallel) {
  Classification c;
  c.family = interesting_family(spec.source().lattice());
  const std::size_t count = c.family.size();
  c.entries.resize(count);

  std::vector<bool> isolated(count, false);
  for (std::size_t k = 0; k < count; ++k) {
    const CoordSet& n = c.family.members[k];
    isolated[k] = n.size() == 1 && n == c.family.co_support(k);
  }

  std::vector<std::future<ElementClass>> pending(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (isolated[k]) {
      c.entries[k] = {c.family.members[k], c.family.predecessors[k], Tag::isolated, "N = N_-^perp, dim 1", {}};
      continue;
    }
    const auto policy = parallel ? std::launch::async : std::launch::deferred;
    pending[k] = std::async(policy, [&spec, n = c.family.members[k]] { return classify_element(spec, n); });
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (!isolated[k]) c.entries[k] = pending[k].get();
  }

  // Downward inheritance to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t big = 0; big < count; ++big) {
      const Tag from = c.entries[big].tag;
      if (isolated[big] || (from != Tag::consistent && from != Tag::twisted)) continue;
      for (std::size_t small = 0; small < count; ++small) {
        if (small == big || isolated[small]) continue;
        if (!c.family.members[small].subset_of(c.family.members[big])) continue;
        ElementClass& e = c.entries[small];
        if (e.tag == Tag::ambiguous) {
          e.tag = from;
          e.trace.push_back("inherited " + to_string(from) + " from " + c.family.members[big].to_string());
          changed = true;
        } else if (e.tag != from) {
          throw ConflictError("element " + e.element.to_string() + " is " + to_string(e.tag) + " but lies below " +
                              to_string(from) + " element " + c.family.members[big].to_string());
        }
      }
    }
  }
  for (const auto& e : c.entries) {
    if (e.tag == Tag::ambiguous) {
      c.warnings.push_back("element " + e.element.to_string() + " stays mode-ambiguous (1x1 block)");
    }
  }
  return c;
}

Decomposition decompose(const MapSpec& spec, const Classification& c) {
  const SubspaceLattice& lattice = spec.source().lattice();
  const std::size_t n = lattice.ambient_dim();
  CoordSet iso = CoordSet::empty(n), cons = CoordSet::empty(n), tw = CoordSet::empty(n), amb = CoordSet::empty(n);
  for (const auto& e : c.entries) {
    switch (e.tag) {
      case Tag::isolated: iso = join(iso, e.element); break;
      case Tag::consistent: cons = join(cons, e.element); break;
      case Tag::twisted: tw = join(tw, e.element); break;
      case Tag::ambiguous: amb = join(amb, e.element); break;
    }
  }
  for (const auto& m : c.entries) {
    if (m.tag != Tag::consistent) continue;
    for (const auto& t : c.entries) {
      if (t.tag != Tag::twisted) continue;
      if (m.element.intersects(t.element)) {
        throw ViolationError("consistent " + m.element.to_string() + " meets twisted " + t.element.to_string());
      }
      if (m.predecessor.complement().intersects(t.predecessor.complement())) {
        throw ViolationError("co-supports of consistent " + m.element.to_string() + " and twisted " +
                             t.element.to_string() + " overlap");
      }
    }
  }
  Decomposition d{iso, cons.minus(iso), tw.minus(iso), amb.minus(join(iso, join(cons, tw)))};
  if (!join(join(d.isolated, d.consistent), join(d.twisted, d.ambiguous)).is_full()) {
    throw ViolationError("decomposition does not cover every coordinate");
  }
  for (const CoordSet* part : {&d.isolated, &d.consistent, &d.twisted}) {
    if (!lattice.contains(*part)) throw ViolationError("summand " + part->to_string() + " is not a lattice member");
  }
  return d;
}

}  // namespace cslrank
