#include <gtest/gtest.h>

#include "support.hpp"

using namespace cslrank;
using namespace testing_support;

namespace {

SubspaceLattice a4() { return lattice_1based(4, {{1}, {3}, {1, 2, 3}, {1, 3, 4}}); }

Matrix perm13_24() {
  Matrix p(4, 4);
  for (std::size_t k = 0; k < 4; ++k) p((k + 2) % 4, k) = Scalar(1);
  return p;
}

ChainGraph graph_of(const MapSpec& spec) { return chain_graph(spec, classify_all(spec)); }

}  // namespace

TEST(LocalFactors, ConsistentExample) {
  const MapSpec spec = demo_spec("a4-phi1");
  const auto lf = local_factors(spec, CoordSet(4, {0}), Mode::consistent);
  EXPECT_EQ(lf.u_domain, (std::vector<std::size_t>{0}));
  EXPECT_EQ(lf.v_domain, (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(lf.u_at(0), Vector::basis(4, 2));
  EXPECT_EQ(lf.v_at(0), Vector::basis(4, 2));
  EXPECT_EQ(lf.v_at(1), Vector::basis(4, 3));
  EXPECT_EQ(lf.v_at(3), Vector::basis(4, 1));
  EXPECT_THROW(lf.u_at(1), MembershipError);
}

TEST(LocalFactors, IdentityOnDiagonal) {
  const auto lf = local_factors(demo_spec("isolated-diag"), CoordSet(2, {0}), Mode::consistent);
  EXPECT_EQ(lf.u_at(0), Vector::basis(2, 0));
  EXPECT_EQ(lf.v_at(0), Vector::basis(2, 0));
}

TEST(LocalFactors, TwistedExample) {
  const MapSpec spec = demo_spec("a4-phi2");
  const auto lf = local_factors(spec, CoordSet(4, {0}), Mode::twisted);
  for (std::size_t j : {0u, 1u, 3u}) {
    EXPECT_EQ(spec.image(0, j), outer(lf.u_at(j), lf.v_at(0))) << j;
  }
}

TEST(LocalFactors, WrongModeFails) {
  EXPECT_THROW(local_factors(demo_spec("a4-phi1"), CoordSet(4, {0, 2}), Mode::twisted), AlphaError);
}

TEST(LambdaEdge, Examples) {
  const MapSpec spec = demo_spec("ainf-diag");
  const auto low = local_factors(spec, CoordSet(6, {0}), Mode::consistent);
  const auto high = local_factors(spec, CoordSet(6, {0, 1, 2}), Mode::consistent);
  // Independent expectation: U_M = lambda U_N at the shared coordinate 1.
  const Scalar lambda = lambda_edge(low, high);
  EXPECT_EQ(low.u_at(0), high.u_at(0) * lambda);
  EXPECT_EQ(lambda_edge(high, high), Scalar(1));
  EXPECT_THROW(lambda_edge(high, low), CoherenceError);
}

TEST(ChainGraph, Examples) {
  const auto g1 = graph_of(demo_spec("a4-phi1"));
  ASSERT_EQ(g1.components.size(), 1u);
  EXPECT_EQ(g1.components[0].members.size(), 5u);
  EXPECT_TRUE(g1.components[0].g.is_full());
  EXPECT_EQ(g1.nodes[g1.components[0].root], CoordSet(4, {0}));

  const auto g2 = graph_of(demo_spec("isolated-diag"));
  ASSERT_EQ(g2.components.size(), 2u);
  EXPECT_FALSE(g2.components[0].g.intersects(g2.components[1].g));

  const auto g3 = graph_of(demo_spec("mixed-blocks"));
  ASSERT_EQ(g3.components.size(), 2u);
  EXPECT_EQ(g3.components[0].members.size(), 5u);
  EXPECT_EQ(g3.components[1].members.size(), 5u);
  EXPECT_EQ(g3.components[1].mode, Mode::twisted);
}

TEST(CycleCheck, Examples) {
  const auto r1 = cycle_check(graph_of(demo_spec("a4-phi1")));
  EXPECT_TRUE(r1.ok);
  EXPECT_EQ(r1.cycles_checked, 4u);  // 8 comparabilities, 5 nodes

  // A two-element nest has a single comparability: nothing to check.
  const SubspaceLattice nest2 = lattice_1based(2, {{1}});
  const MapSpec id2 = spec_from_rule(nest2, nest2, [](std::size_t i, std::size_t j) { return Matrix::unit(2, 2, i, j); });
  const auto g = graph_of(id2);
  EXPECT_EQ(g.edges.size(), 1u);
  const auto r2 = cycle_check(g);
  EXPECT_TRUE(r2.ok);
  EXPECT_EQ(r2.cycles_checked, 0u);

  // The six-element nest has every pair comparable.
  const auto r3 = cycle_check(graph_of(demo_spec("nest-shift")));
  EXPECT_TRUE(r3.ok);
  EXPECT_EQ(r3.cycles_checked, 15u - 5u);
}

TEST(CycleCheck, PerturbedLambdaIsCaught) {
  const MapSpec spec = perturbed_cycle_spec();
  const auto g = graph_of(spec);
  const auto report = cycle_check(g);
  ASSERT_FALSE(report.ok);
  EXPECT_FALSE(report.product == Scalar(1));
  ASSERT_GE(report.cycle.size(), 3u);
  const std::size_t root = g.components[g.component_of[report.cycle.front()]].root;
  EXPECT_EQ(report.cycle.front(), root);
  EXPECT_EQ(report.cycle.back(), root);
  // Independent product along the reported walk.
  Scalar product(1);
  for (std::size_t k = 0; k + 1 < report.cycle.size(); ++k) {
    const std::size_t a = report.cycle[k], b = report.cycle[k + 1];
    if (a == b) continue;
    product *= g.nodes[a].subset_of(g.nodes[b]) ? lambda_edge(g.factors[a], g.factors[b])
                                                : Scalar(1) / lambda_edge(g.factors[b], g.factors[a]);
  }
  EXPECT_EQ(product, report.product);
  EXPECT_THROW(assemble(spec, g), CoherenceError);
  EXPECT_FALSE(reconstruct(spec).implementation.has_value());
}

TEST(Assemble, PermutationExample) {
  const auto r = reconstruct(demo_spec("a4-phi1"));
  ASSERT_TRUE(r.implementation.has_value());
  const auto c = matrix_multiple(r.implementation->global_u(), perm13_24());
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(r.implementation->global_v(), perm13_24() * (Scalar(1) / *c).conj());
  EXPECT_EQ(r.implementation->certificate, "exact");
}

TEST(Verify, CorruptedImplementationListsUnits) {
  const MapSpec spec = demo_spec("a4-phi1");
  Implementation impl = *reconstruct(spec).implementation;
  impl.blocks[0].u.set_column(1, Vector(4));  // coordinate 2
  const auto report = verify(spec, impl);
  EXPECT_FALSE(report.ok);
  EXPECT_FALSE(report.certified);
  // Units with row coordinate 2: only (2,2).
  EXPECT_EQ(report.failures, (std::vector<UnitIndex>{{1, 1}}));
}

TEST(Verify, CollapseIsNotCertified) {
  // Rank-one images everywhere but U collapses two coordinates.
  const SubspaceLattice d = lattice_1based(2, {{1}, {2}});
  const Matrix u{{1, 1}, {0, 0}};
  const MapSpec spec = implemented_spec(d, d, u, u);
  const auto r = reconstruct(spec);
  ASSERT_TRUE(r.report.has_value());
  EXPECT_TRUE(r.report->ok);
  EXPECT_FALSE(r.report->injective);
  EXPECT_EQ(r.implementation->certificate, "none");
}

TEST(Psi, Examples) {
  const MapSpec phi1 = demo_spec("a4-phi1");
  const auto impl = *reconstruct(phi1).implementation;
  const auto p = psi(phi1, impl);
  EXPECT_EQ(p.phi_identity, Matrix::identity(4));
  EXPECT_TRUE(p.multiplicative);
  EXPECT_TRUE(p.within_target);
  ASSERT_TRUE(p.matches_similarity.has_value());
  EXPECT_TRUE(*p.matches_similarity);

  ExactRng rng(401);
  const MaskAlgebra alg = mask(a4());
  const Matrix u = random_invertible_member(rng, alg);
  const Matrix vstar = inverse(u) * Scalar(2);
  const MapSpec spec = implemented_spec(a4(), a4(), u, vstar.adjoint());
  const auto p2 = psi(spec, *reconstruct(spec).implementation);
  EXPECT_EQ(p2.phi_identity, Matrix::identity(4) * Scalar(2));
  for (const auto& [i, j] : alg.allowed_pairs()) {
    EXPECT_EQ(p2.composed.image(i, j), u * Matrix::unit(4, 4, i, j) * inverse(u));
  }
  EXPECT_TRUE(p2.multiplicative);

  const SubspaceLattice d = lattice_1based(2, {{1}, {2}});
  const MapSpec singular = implemented_spec(d, d, Matrix::identity(2), Matrix{{1, 0}, {0, 0}});
  EXPECT_THROW(psi(singular, Implementation{}), SingularError);
}

TEST(RoundTrip, ConsistentProperty) {
  ExactRng rng(402);
  for (int t = 0; t < 40; ++t) {
    const RoundTrip rt = make_round_trip(rng, Mode::consistent, 7);
    const auto why = check_round_trip(rt, reconstruct(rt.spec));
    EXPECT_TRUE(why.empty()) << why;
  }
}

TEST(RoundTrip, TwistedProperty) {
  ExactRng rng(403);
  for (int t = 0; t < 30; ++t) {
    const RoundTrip rt = make_round_trip(rng, Mode::twisted, 6);
    const auto why = check_round_trip(rt, reconstruct(rt.spec));
    EXPECT_TRUE(why.empty()) << why;
  }
}

TEST(RoundTrip, LambdaCocycleProperty) {
  ExactRng rng(404);
  for (int t = 0; t < 25; ++t) {
    const RoundTrip rt = make_round_trip(rng, Mode::consistent, 6);
    const auto g = graph_of(rt.spec);
    const std::size_t count = g.nodes.size();
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        for (std::size_t c = 0; c < count; ++c) {
          if (a == b || b == c || g.component_of[a] != g.component_of[c]) continue;
          if (g.components[g.component_of[a]].isolated) continue;
          if (!g.nodes[a].subset_of(g.nodes[b]) || !g.nodes[b].subset_of(g.nodes[c])) continue;
          EXPECT_EQ(lambda_edge(g.factors[a], g.factors[c]),
                    lambda_edge(g.factors[a], g.factors[b]) * lambda_edge(g.factors[b], g.factors[c]));
        }
  }
}

TEST(RoundTrip, LocalGlobalCoherenceProperty) {
  ExactRng rng(405);
  for (int t = 0; t < 25; ++t) {
    const RoundTrip rt = make_round_trip(rng, Mode::consistent, 6);
    const auto r = reconstruct(rt.spec);
    ASSERT_TRUE(r.implementation.has_value());
    const Matrix gu = r.implementation->global_u();
    for (std::size_t k = 0; k < r.graph.nodes.size(); ++k) {
      // Each member's local U is a multiple of the global U on its domain.
      const auto& lf = r.graph.factors[k];
      Matrix local = lf.u;
      const auto c = matrix_multiple(local, columns_of(gu, r.graph.nodes[k]));
      EXPECT_TRUE(c.has_value()) << r.graph.nodes[k].to_string();
    }
  }
}

TEST(RoundTrip, ScalingInvarianceProperty) {
  ExactRng rng(406);
  for (int t = 0; t < 20; ++t) {
    const RoundTrip rt = make_round_trip(rng, Mode::consistent, 6);
    const Scalar s = rng.nonzero();
    MapSpec scaled(rt.spec.source(), rt.spec.target());
    for (const auto& [unit, m] : rt.spec.images()) scaled.set_image(unit.first, unit.second, m * s);
    const auto r = reconstruct(scaled);
    ASSERT_TRUE(r.implementation.has_value());
    EXPECT_TRUE(r.report->ok);
    const std::size_t n = rt.source.n;
    for (const auto& [i, j] : scaled.source().allowed_pairs()) {
      const Matrix e = Matrix::unit(n, n, i, j);
      EXPECT_EQ(evaluate(*r.implementation, e), rt.u * e * rt.v.adjoint() * s);
    }
  }
}

TEST(Duality, TransposedTwistedMapIsConsistent) {
  const MapSpec phi2 = demo_spec("a4-phi2");
  // Alg(L)^T = Alg of the complements.
  std::vector<CoordSet> complements;
  for (const auto& e : phi2.source().lattice().elements()) complements.push_back(e.complement());
  const SubspaceLattice dual = closure(4, complements);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(mask(dual).allowed(i, j), phi2.source().allowed(j, i));
  const MapSpec composed = spec_from_rule(dual, phi2.target().lattice(),
                                          [&](std::size_t i, std::size_t j) { return phi2.image(j, i); });
  const auto c = classify_all(composed);
  EXPECT_EQ(c.count(Tag::consistent), c.family.size());
  const auto r = reconstruct(composed);
  ASSERT_TRUE(r.report.has_value());
  EXPECT_TRUE(r.report->certified);
}
