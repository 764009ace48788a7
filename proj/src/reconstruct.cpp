#include "cslrank/reconstruct.hpp"

#include <algorithm>
#include <deque>
#include <future>

namespace cslrank {

std::string to_string(Mode mode) { return mode == Mode::consistent ? "consistent" : "twisted"; }

namespace {

std::size_t position(const std::vector<std::size_t>& domain, std::size_t coord) {
  auto it = std::find(domain.begin(), domain.end(), coord);
  if (it == domain.end()) throw MembershipError("coordinate " + std::to_string(coord + 1) + " outside factor domain");
  return static_cast<std::size_t>(it - domain.begin());
}

std::vector<std::size_t> shared(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Matrix unit_image(const MapSpec& spec, const CoordSet& n, std::size_t i, std::size_t j) {
  Matrix img = spec.image(i, j);
  if (rank(img) != 1) {
    throw NotRankPreserving("element " + n.to_string() + ": image of unit " + unit_label({i, j}) + " has rank " +
                            std::to_string(rank(img)));
  }
  return img;
}

// Solve B = w v^* for w, reporting a failed match as a broken factorization.
Vector factor_against(const Matrix& b, const Vector& v, const CoordSet& n, const UnitIndex& unit) {
  try {
    return match_factor(b, v);
  } catch (const FactorError&) {
    throw AlphaError("element " + n.to_string() + ": image of " + unit_label(unit) +
                     " does not share the base factor");
  }
}

}  // namespace

Vector LocalFactors::u_at(std::size_t coord) const { return u.column(position(u_domain, coord)); }
Vector LocalFactors::v_at(std::size_t coord) const { return v.column(position(v_domain, coord)); }

LocalFactors local_factors(const MapSpec& spec, const CoordSet& n, Mode mode) {
  const CoordSet co = co_support(spec.source().lattice(), n);
  if (n.is_empty() || co.is_empty()) throw MembershipError(n.to_string() + " is not in the interesting family");
  const std::size_t n2 = spec.target_dim();

  LocalFactors lf;
  lf.element = n;
  lf.mode = mode;
  lf.base_row = n.first();
  lf.base_col = co.first();
  const auto [u1, v1] = rank_one_factor(unit_image(spec, n, lf.base_row, lf.base_col));

  const bool consistent = mode == Mode::consistent;
  lf.u_domain = consistent ? n.members() : co.members();
  lf.v_domain = consistent ? co.members() : n.members();
  lf.u = Matrix(n2, lf.u_domain.size());
  lf.v = Matrix(n2, lf.v_domain.size());

  // Consistent: Phi(E_ij) = U e_i (V e_j)^*; U e_i from the column f_1,
  // V e_j from the row x_1.
  // Twisted: Phi(E_ij) = U e_j (V e_i)^*; U e_j from the row x_1, V e_i
  // from the column f_1.
  for (std::size_t a = 0; a < lf.u_domain.size(); ++a) {
    const std::size_t k = lf.u_domain[a];
    const UnitIndex unit = consistent ? UnitIndex{k, lf.base_col} : UnitIndex{lf.base_row, k};
    lf.u.set_column(a, factor_against(unit_image(spec, n, unit.first, unit.second), v1, n, unit));
  }
  for (std::size_t b = 0; b < lf.v_domain.size(); ++b) {
    const std::size_t k = lf.v_domain[b];
    const UnitIndex unit = consistent ? UnitIndex{lf.base_row, k} : UnitIndex{k, lf.base_col};
    lf.v.set_column(b, factor_against(unit_image(spec, n, unit.first, unit.second).adjoint(), u1, n, unit));
  }

  // The factored form must reproduce every image of the block.
  for (std::size_t i : n.members()) {
    for (std::size_t j : co.members()) {
      const Matrix expected = consistent ? outer(lf.u_at(i), lf.v_at(j)) : outer(lf.u_at(j), lf.v_at(i));
      if (!(spec.image(i, j) == expected)) {
        throw AlphaError("element " + n.to_string() + ": local factors do not reproduce the image of " +
                         unit_label({i, j}));
      }
    }
  }
  return lf;
}

Scalar lambda_edge(const LocalFactors& lower, const LocalFactors& upper) {
  if (lower.mode != upper.mode) throw CoherenceError("lambda requested across modes");
  if (!lower.element.subset_of(upper.element)) {
    throw CoherenceError(lower.element.to_string() + " is not below " + upper.element.to_string());
  }
  const auto edge = lower.element.to_string() + " <= " + upper.element.to_string();
  const auto su = shared(lower.u_domain, upper.u_domain);
  const auto sv = shared(lower.v_domain, upper.v_domain);
  if (su.empty()) throw CoherenceError("edge " + edge + ": no shared U coordinate");

  const auto lambda = collinear(lower.u_at(su.front()), upper.u_at(su.front()));
  if (!lambda || lambda->is_zero()) throw CoherenceError("edge " + edge + ": U columns are not proportional");
  for (std::size_t k : su) {
    if (!(lower.u_at(k) == *lambda * upper.u_at(k))) {
      throw CoherenceError("edge " + edge + ": U ratio differs at coordinate " + std::to_string(k + 1));
    }
  }
  const Scalar bar = lambda->conj();
  for (std::size_t k : sv) {
    if (!(upper.v_at(k) == bar * lower.v_at(k))) {
      throw CoherenceError("edge " + edge + ": V ratio differs at coordinate " + std::to_string(k + 1));
    }
  }
  return *lambda;
}

ChainGraph chain_graph(const MapSpec& spec, const Classification& c) {
  ChainGraph g;
  const std::size_t count = c.family.size();
  const std::size_t n = spec.source_dim();
  g.nodes = c.family.members;
  g.modes.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    g.modes[k] = c.entries[k].tag == Tag::twisted ? Mode::twisted : Mode::consistent;
  }

  std::vector<std::future<LocalFactors>> pending;
  pending.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    pending.push_back(std::async(std::launch::deferred,
                                 [&spec, &g, k] { return local_factors(spec, g.nodes[k], g.modes[k]); }));
  }
  for (auto& p : pending) g.factors.push_back(p.get());

  auto isolated = [&](std::size_t k) { return c.entries[k].tag == Tag::isolated; };
  std::vector<std::vector<std::size_t>> adjacent(count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (a == b || isolated(a) || isolated(b) || g.modes[a] != g.modes[b]) continue;
      if (!g.nodes[a].subset_of(g.nodes[b])) continue;
      g.edges.push_back({a, b, lambda_edge(g.factors[a], g.factors[b])});
      adjacent[a].push_back(b);
      adjacent[b].push_back(a);
    }
  }

  g.component_of.assign(count, count);
  for (std::size_t start = 0; start < count; ++start) {
    if (g.component_of[start] != count) continue;
    ChainComponent comp;
    comp.g = CoordSet::empty(n);
    comp.f = CoordSet::empty(n);
    const std::size_t id = g.components.size();
    std::deque<std::size_t> queue{start};
    g.component_of[start] = id;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      comp.members.push_back(k);
      for (std::size_t nb : adjacent[k]) {
        if (g.component_of[nb] == count) {
          g.component_of[nb] = id;
          queue.push_back(nb);
        }
      }
    }
    std::sort(comp.members.begin(), comp.members.end());
    comp.root = *std::min_element(comp.members.begin(), comp.members.end(), [&](std::size_t a, std::size_t b) {
      return lex_less(g.nodes[a], g.nodes[b]);
    });
    comp.mode = g.modes[comp.root];
    for (std::size_t k : comp.members) {
      comp.g = join(comp.g, g.nodes[k]);
      comp.f = join(comp.f, c.family.co_support(k));
      if (g.modes[k] != comp.mode) throw CoherenceError("component mixes modes");
      comp.isolated = comp.isolated || isolated(k);
      comp.mode_ambiguous = comp.mode_ambiguous || c.entries[k].tag == Tag::ambiguous;
    }
    g.components.push_back(std::move(comp));
  }

  for (std::size_t a = 0; a < g.components.size(); ++a) {
    for (std::size_t b = a + 1; b < g.components.size(); ++b) {
      const auto& ca = g.components[a];
      const auto& cb = g.components[b];
      if (ca.g.intersects(cb.g) || ca.f.intersects(cb.f)) {
        throw OrthogonalityError("components rooted at " + g.nodes[ca.root].to_string() + " and " +
                                 g.nodes[cb.root].to_string() + " overlap");
      }
    }
  }
  return g;
}

namespace {

struct Tree {
  std::vector<Scalar> potential;  // lambda_{root, node}
  std::vector<std::size_t> parent;
  std::vector<bool> tree_edge;    // parallel to ChainGraph::edges
};

// BFS spanning forest from each component root.
Tree spanning_forest(const ChainGraph& g) {
  const std::size_t count = g.nodes.size();
  Tree t{std::vector<Scalar>(count, Scalar(1)), std::vector<std::size_t>(count, count),
         std::vector<bool>(g.edges.size(), false)};
  std::vector<std::vector<std::size_t>> incident(count);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    incident[g.edges[e].lower].push_back(e);
    incident[g.edges[e].upper].push_back(e);
  }
  std::vector<bool> seen(count, false);
  for (const auto& comp : g.components) {
    std::deque<std::size_t> queue{comp.root};
    seen[comp.root] = true;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      for (std::size_t e : incident[k]) {
        const ChainEdge& edge = g.edges[e];
        const std::size_t other = edge.lower == k ? edge.upper : edge.lower;
        if (seen[other]) continue;
        seen[other] = true;
        t.tree_edge[e] = true;
        t.parent[other] = k;
        // lambda_{k,other} is lambda when k is the lower end, else its inverse.
        t.potential[other] = edge.lower == k ? t.potential[k] * edge.lambda : t.potential[k] / edge.lambda;
        queue.push_back(other);
      }
    }
  }
  return t;
}

std::vector<std::size_t> path_to_root(const Tree& t, std::size_t k) {
  std::vector<std::size_t> path{k};
  while (t.parent[path.back()] != t.parent.size()) path.push_back(t.parent[path.back()]);
  return path;
}

}  // namespace

CycleReport cycle_check(const ChainGraph& g) {
  CycleReport report;
  const Tree t = spanning_forest(g);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (t.tree_edge[e]) continue;
    ++report.cycles_checked;
    const ChainEdge& edge = g.edges[e];
    // root -> lower -> upper -> root
    const Scalar product = t.potential[edge.lower] * edge.lambda / t.potential[edge.upper];
    if (product == Scalar(1)) continue;
    report.ok = false;
    report.product = product;
    auto down = path_to_root(t, edge.lower);
    std::reverse(down.begin(), down.end());
    const auto up = path_to_root(t, edge.upper);
    report.cycle = down;
    report.cycle.insert(report.cycle.end(), up.begin(), up.end());
    return report;
  }
  return report;
}

Matrix Implementation::global_u() const {
  Matrix out(target_dim, source_dim);
  for (const auto& b : blocks) {
    const auto& dom = b.u_domain().members();
    for (std::size_t a = 0; a < dom.size(); ++a) out.set_column(dom[a], b.u.column(a));
  }
  return out;
}

Matrix Implementation::global_v() const {
  Matrix out(target_dim, source_dim);
  for (const auto& b : blocks) {
    const auto& dom = b.v_domain().members();
    for (std::size_t a = 0; a < dom.size(); ++a) out.set_column(dom[a], b.v.column(a));
  }
  return out;
}

Matrix evaluate(const Implementation& impl, const Matrix& a) {
  if (a.rows() != impl.source_dim || a.cols() != impl.source_dim) throw DimensionError("operand shape mismatch");
  Matrix out = Matrix::zero(impl.target_dim, impl.target_dim);
  for (const auto& b : impl.blocks) {
    const auto& rows = b.g.members();
    const auto& cols = b.f.members();
    Matrix sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = a(rows[r], cols[c]);
    const Matrix mid = b.mode == Mode::consistent ? sub : sub.transpose();
    out += b.u * mid * b.v.adjoint();
  }
  return out;
}

Implementation assemble(const MapSpec& spec, const ChainGraph& g) {
  const CycleReport cycles = cycle_check(g);
  if (!cycles.ok) throw CoherenceError("cycle check failed; lambda product " + cycles.product.to_string());

  const Tree t = spanning_forest(g);
  Implementation impl;
  impl.source_dim = spec.source_dim();
  impl.target_dim = spec.target_dim();
  const std::size_t n2 = impl.target_dim;
  CoordSet covered = CoordSet::empty(impl.source_dim);

  for (const auto& comp : g.components) {
    Block block{comp.g, comp.f, comp.mode, {}, {}};
    const auto& udom = block.u_domain().members();
    const auto& vdom = block.v_domain().members();
    std::vector<std::optional<Vector>> ucols(udom.size()), vcols(vdom.size());
    const auto place = [&](std::vector<std::optional<Vector>>& cols, const std::vector<std::size_t>& dom,
                           std::size_t coord, Vector value, const CoordSet& from, const char* which) {
      const std::size_t a = position(dom, coord);
      if (!cols[a]) {
        cols[a] = std::move(value);
      } else if (!(*cols[a] == value)) {
        throw CoherenceError(std::string(which) + " column " + std::to_string(coord + 1) + " from " +
                             from.to_string() + " disagrees with another member of its component");
      }
    };
    for (std::size_t k : comp.members) {
      const LocalFactors& lf = g.factors[k];
      const Scalar scale_u = t.potential[k];                      // lambda_{root,M}
      const Scalar scale_v = (Scalar(1) / t.potential[k]).conj();  // conj(lambda_{M,root})
      for (std::size_t c : lf.u_domain) place(ucols, udom, c, lf.u_at(c) * scale_u, lf.element, "U");
      for (std::size_t c : lf.v_domain) place(vcols, vdom, c, lf.v_at(c) * scale_v, lf.element, "V");
    }
    block.u = Matrix(n2, udom.size());
    block.v = Matrix(n2, vdom.size());
    for (std::size_t a = 0; a < udom.size(); ++a) {
      if (!ucols[a]) throw CoverageError("U column " + std::to_string(udom[a] + 1) + " never determined");
      block.u.set_column(a, *ucols[a]);
    }
    for (std::size_t a = 0; a < vdom.size(); ++a) {
      if (!vcols[a]) throw CoverageError("V column " + std::to_string(vdom[a] + 1) + " never determined");
      block.v.set_column(a, *vcols[a]);
    }
    covered = join(covered, comp.g);
    if (comp.isolated) impl.flags.push_back("isolated: " + comp.g.to_string());
    if (comp.mode_ambiguous) impl.flags.push_back("mode-ambiguous: " + comp.g.to_string());
    impl.blocks.push_back(std::move(block));
  }
  if (!covered.is_full()) {
    throw CoverageError("coordinates " + covered.complement().to_string() + " lie in no component");
  }
  const VerifyReport report = verify(spec, impl);
  impl.certificate = report.certified ? "exact" : "none";
  if (report.ok && !report.injective) impl.flags.push_back("not-injective");
  if (!report.surjective()) impl.flags.push_back("not-onto");
  return impl;
}

VerifyReport verify(const MapSpec& spec, const Implementation& impl) {
  VerifyReport report;
  const std::size_t n1 = spec.source_dim();
  if (impl.source_dim != n1 || impl.target_dim != spec.target_dim()) {
    throw DimensionError("implementation dimensions do not match the map");
  }
  const auto units = spec.source().allowed_pairs();
  Matrix images(units.size(), spec.target_dim() * spec.target_dim());
  for (std::size_t k = 0; k < units.size(); ++k) {
    const auto [i, j] = units[k];
    const Matrix e = Matrix::unit(n1, n1, i, j);
    const Matrix img = spec.image(i, j);
    ++report.units_checked;
    if (!(img == evaluate(impl, e))) report.failures.push_back(units[k]);
    const Vector flat = img.flatten();
    for (std::size_t c = 0; c < flat.size(); ++c) images(k, c) = flat[c];
  }
  report.ok = report.failures.empty();
  report.u_rank = rank(impl.global_u());
  report.v_rank = rank(impl.global_v());
  report.injective = report.u_rank == n1 && report.v_rank == n1;
  report.certified = report.ok && report.injective;
  report.image_dimension = rank(images);
  report.target_dimension = spec.target().dimension();
  return report;
}

PsiResult psi(const MapSpec& spec, const Implementation& impl) {
  const std::size_t n = spec.source_dim();
  if (spec.target_dim() != n || !(spec.source().allowed_pairs() == spec.target().allowed_pairs())) {
    throw DimensionError("psi needs a map from an algebra to itself");
  }
  PsiResult out;
  out.phi_identity = apply(spec, Matrix::identity(n));
  const Matrix inv = inverse(out.phi_identity);
  out.composed = MapSpec(spec.source(), spec.target());
  const auto units = spec.source().allowed_pairs();
  for (const auto& [i, j] : units) out.composed.set_image(i, j, spec.image(i, j) * inv);
  out.within_target = validate(out.composed).ok;

  // E_ij E_kl = delta_jk E_il; the composed map must respect every product.
  for (const auto& [i, j] : units) {
    for (const auto& [k, l] : units) {
      const Matrix lhs = j == k ? out.composed.image(i, l) : Matrix::zero(n, n);
      if (!(lhs == out.composed.image(i, j) * out.composed.image(k, l))) {
        out.failures.push_back("product " + unit_label({i, j}) + " * " + unit_label({k, l}));
      }
    }
  }
  out.multiplicative = out.failures.empty();

  const bool all_consistent = std::all_of(impl.blocks.begin(), impl.blocks.end(),
                                          [](const Block& b) { return b.mode == Mode::consistent; });
  if (all_consistent && impl.source_dim == n) {
    const Matrix u = impl.global_u();
    if (rank(u) == n) {
      const Matrix u_inv = inverse(u);
      bool match = true;
      for (const auto& [i, j] : units) {
        match = match && out.composed.image(i, j) == u * Matrix::unit(n, n, i, j) * u_inv;
      }
      out.matches_similarity = match;
    }
  }
  return out;
}

PipelineResult reconstruct(const MapSpec& spec, bool parallel) {
  PipelineResult r;
  r.classification = classify_all(spec, parallel);
  r.decomposition = decompose(spec, r.classification);
  r.graph = chain_graph(spec, r.classification);
  r.cycles = cycle_check(r.graph);
  if (!r.cycles.ok) return r;
  r.implementation = assemble(spec, r.graph);
  r.report = verify(spec, *r.implementation);
  return r;
}

}  // namespace cslrank
