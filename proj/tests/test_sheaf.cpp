#include <gtest/gtest.h>

#include "msh/fixtures.hpp"
#include "msh/sheaf.hpp"

using namespace msh;

namespace {

std::shared_ptr<const MomentGraph> block_graph(CartanType t, int rank, const char* lambda = nullptr) {
  const auto rs = RootSystem::build(t, rank);
  const auto b = build_block(rs, lambda ? parse_weight(lambda) : Weight(rank, Rational(-2)));
  return std::shared_ptr<const MomentGraph>(b, &b->graph);
}

std::size_t dim_s(int nvars, int degree) { return degree_slice(nvars, degree).size(); }

// dim Z_d by solving z_a - z_b = alpha_E * w_E with unknowns z in S_d, w_E in S_{d-2};
// multiplication by alpha_E is injective, so the kernel dimension equals dim Z_d.
std::size_t structure_algebra_oracle(const MomentGraph& g, int d) {
  const int n = g.variable_count();
  const auto& top = degree_slice(n, d).monomials();
  const auto& low = degree_slice(n, d - 2).monomials();
  const std::size_t nv = g.vertex_count(), ne = g.edge_count();
  const std::size_t cols = nv * top.size() + ne * low.size();
  RationalMatrix m(ne * top.size(), cols);
  auto row_of = [&](Monomial u) {
    for (std::size_t k = 0; k < top.size(); ++k)
      if (top[k] == u) return k;
    throw std::logic_error("monomial not found");
  };
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& edge = g.edge(e);
    for (std::size_t k = 0; k < top.size(); ++k) {
      m(e * top.size() + k, edge.a * top.size() + k) += Rational(1);
      m(e * top.size() + k, edge.b * top.size() + k) -= Rational(1);
    }
    const Polynomial alpha = edge.label.as_polynomial();
    for (std::size_t k = 0; k < low.size(); ++k) {
      const Polynomial p = alpha.times(low[k]);
      for (const auto& [u, c] : p.terms()) m(e * top.size() + row_of(u), nv * top.size() + e * low.size() + k) -= c;
    }
  }
  return kernel_basis(m).size();
}

// Coefficients of sum_w q^{l(w)} / (1 - q)^r.
std::vector<std::size_t> free_series(const std::vector<int>& lengths, int rank, int terms) {
  std::vector<std::size_t> out(terms, 0);
  for (int k = 0; k < terms; ++k)
    for (int l : lengths)
      if (k >= l) out[k] += dim_s(rank, 2 * (k - l));
  return out;
}

}  // namespace

TEST(StructureSheaf, Shape) {
  const auto g = block_graph(CartanType::A, 2);
  const Sheaf s = structure_sheaf(g);
  for (std::size_t v = 0; v < 6; ++v) EXPECT_EQ(s.stalk(v).shifts(), std::vector<int>{0});
  for (std::size_t e = 0; e < 9; ++e) {
    EXPECT_EQ(s.edge_module(e).shifts(), std::vector<int>{0});
    EXPECT_EQ(s.edge_module(e).excluded_variable(), g->edge(e).label.pivot());
  }
  EXPECT_EQ(stalk_rank_poly(s, 3), QPoly::constant(1));
}

TEST(StructureSheaf, RestrictionIsReductionAndKillsLabel) {
  const auto g = block_graph(CartanType::B, 2);
  const Sheaf s = structure_sheaf(g);
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    const auto& edge = g->edge(e);
    for (int d = 0; d <= 6; d += 2) {
      const RationalMatrix& r = s.restriction_matrix(edge.a, e, d);
      const auto& mons = degree_slice(2, d).monomials();
      for (std::size_t k = 0; k < mons.size(); ++k) {
        const Polynomial reduced = reduce_mod_linear(Polynomial::term(mons[k]), edge.label);
        EXPECT_EQ(r.column(k), s.edge_module(e).encode({reduced}, d));
      }
      // alpha_E * u restricts to zero
      const RationalMatrix& r2 = s.restriction_matrix(edge.b, e, d + 2);
      for (Monomial u : mons) {
        const Vector x = s.stalk(edge.b).encode({edge.label.as_polynomial().times(u)}, d + 2);
        EXPECT_TRUE(is_zero_vector(r2.apply(x)));
      }
    }
  }
}

TEST(StructureAlgebra, A1Dimensions) {
  const auto g = block_graph(CartanType::A, 1);
  const auto z = structure_algebra(g, 10);
  EXPECT_EQ(z.dims, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2}));
  for (int d = 0; d <= 10; d += 2) EXPECT_EQ(z.dims[d / 2], structure_algebra_oracle(*g, d));
}

TEST(StructureAlgebra, AgreesWithDivisibilityOracle) {
  for (auto [t, r, lam] : std::vector<std::tuple<CartanType, int, const char*>>{
           {CartanType::A, 2, nullptr}, {CartanType::B, 2, nullptr}, {CartanType::A, 2, "-1,-3"}, {CartanType::G, 2, nullptr}}) {
    const auto g = block_graph(t, r, lam);
    const auto z = structure_algebra(g, 8);
    for (int d = 0; d <= 8; d += 2) EXPECT_EQ(z.dims[d / 2], structure_algebra_oracle(*g, d)) << d;
    EXPECT_EQ(z.dims[0], 1u);
  }
}

TEST(StructureAlgebra, RegularA2IsFreeOverS) {
  const auto g = block_graph(CartanType::A, 2);
  const auto z = structure_algebra(g, 10);
  std::vector<int> lengths;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) lengths.push_back(g->vertex(v).length);
  EXPECT_EQ(z.dims, free_series(lengths, 2, 6));
}

TEST(StructureAlgebra, DisconnectedGraphIsProduct) {
  std::vector<GraphVertex> v{{"a", {}, 0, 0}, {"b", {}, 0, 0}};
  auto g = std::make_shared<const MomentGraph>(2, v, std::vector<GraphEdge>{},
                                               std::vector<std::vector<bool>>{{true, false}, {false, true}});
  const auto z = structure_algebra(g, 8);
  for (int d = 0; d <= 8; d += 2) EXPECT_EQ(z.dims[d / 2], 2 * dim_s(2, d));
}

TEST(Sections, SkyscraperSupport) {
  const auto g = block_graph(CartanType::A, 2);
  const Sheaf s = skyscraper(g, 2, 2);
  EXPECT_EQ(stalk_rank_poly(s, 2), QPoly::monomial(1));
  EXPECT_TRUE(stalk_rank_poly(s, 0).is_zero());
  for (const auto& h : open_subgraphs(*g, Direction::Up).sets) {
    for (int d = 0; d <= 6; d += 2) {
      const std::size_t want = h.vertices[2] ? dim_s(2, d - 2) : 0;
      EXPECT_EQ(sections(s, h, d).basis.size(), want);
    }
  }
}

TEST(Sections, DegreeCap) {
  const auto g = block_graph(CartanType::A, 1);
  const Sheaf s = structure_sheaf(g);
  try {
    sections(s, SubgraphSelector::full(*g), kGlobalDegreeCap + 2);
    FAIL() << "expected an error";
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("40"), std::string::npos);
  }
}

TEST(Sections, LiftingMatchesExplicitKernels) {
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2}, {CartanType::B, 2}}) {
    const auto g = block_graph(t, r);
    const Sheaf s = structure_sheaf(g);
    const std::vector<bool> all(g->vertex_count(), true);
    const auto mod = section_module(s, all, Direction::Up, 8);
    EXPECT_EQ(mod.method, "lifting");
    const auto full = SubgraphSelector::full(*g);
    for (int d = 0; d <= 8; d += 2)
      EXPECT_EQ(generated_piece(s, mod.generators, all, d).size(), sections(s, full, d).basis.size());
    // free of rank |W| on generators in degrees 2 l(w)
    std::vector<int> degs, want;
    for (const auto& gen : mod.generators) degs.push_back(gen.degree);
    for (std::size_t v = 0; v < g->vertex_count(); ++v) want.push_back(2 * g->vertex(v).length);
    std::sort(degs.begin(), degs.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(degs, want);
  }
}

TEST(Sections, FallbackWhenLiftingFails) {
  const Sheaf s = non_flabby_a1_sheaf();
  const auto mod = section_module(s, {true, true}, Direction::Down, 6);
  EXPECT_EQ(mod.method, "explicit kernels");
  // sections are (a x, b x): two generators in degree 2
  ASSERT_EQ(mod.generators.size(), 2u);
  EXPECT_EQ(mod.generators[0].degree, 2);
}

TEST(Flabby, Examples) {
  const auto a1 = block_graph(CartanType::A, 1);
  EXPECT_TRUE(is_flabby_up_to(structure_sheaf(a1), Direction::Up, 6).ok);
  EXPECT_TRUE(is_flabby_up_to(skyscraper(a1, 0), Direction::Up, 6).ok);
  const auto bad = is_flabby_up_to(non_flabby_a1_sheaf(), Direction::Up, 6);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.degree_cap, 6);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_NE(bad.failures[0].find("{e}"), std::string::npos);
}

TEST(Flabby, MethodsAgree) {
  const auto a2 = block_graph(CartanType::A, 2);
  for (Direction d : {Direction::Up, Direction::Down}) {
    for (FlabbyMethod m : {FlabbyMethod::AllOpenSets, FlabbyMethod::Vertexwise}) {
      EXPECT_TRUE(is_flabby_up_to(structure_sheaf(a2), d, 6, m).ok);
      EXPECT_FALSE(is_flabby_up_to(non_flabby_a1_sheaf(), d, 6, m).ok);
      EXPECT_TRUE(is_flabby_up_to(skyscraper(a2, 3), d, 6, m).ok);
    }
  }
  const auto a3 = block_graph(CartanType::A, 3);
  const auto rep = is_flabby_up_to(structure_sheaf(a3), Direction::Up, 4);
  EXPECT_EQ(rep.method, "vertexwise extension");
  EXPECT_TRUE(rep.ok);
}

TEST(FProjective, Examples) {
  const auto a1 = block_graph(CartanType::A, 1);
  EXPECT_TRUE(check_f_projective(structure_sheaf(a1), Direction::Up, 6).ok());
  const auto low = check_f_projective(skyscraper(a1, 0), Direction::Up, 6);
  EXPECT_FALSE(low.ok());
  EXPECT_TRUE(low.flabby.ok);
  EXPECT_FALSE(low.upward_iso);
  EXPECT_TRUE(check_f_projective(skyscraper(a1, 1), Direction::Up, 6).ok());
  EXPECT_TRUE(check_f_projective(skyscraper(a1, 0), Direction::Down, 6).ok());
  const auto a2 = block_graph(CartanType::A, 2);
  EXPECT_TRUE(check_f_projective(structure_sheaf(a2), Direction::Up, 6).ok());
  EXPECT_TRUE(check_f_projective(structure_sheaf(a2), Direction::Down, 6).ok());
  EXPECT_FALSE(check_f_projective(non_flabby_a1_sheaf(), Direction::Up, 4).ok());
}

TEST(Costalk, Examples) {
  const auto a1 = block_graph(CartanType::A, 1);
  const auto c = costalk(structure_sheaf(a1), 0, CostalkMode::Up, 8);
  EXPECT_EQ(c.dims, (std::vector<std::size_t>{0, 1, 1, 1, 1}));
  EXPECT_EQ(c.generator_degrees, std::vector<int>{2});
  EXPECT_TRUE(c.free);
  const auto top = costalk(structure_sheaf(a1), 1, CostalkMode::Up, 8);
  EXPECT_EQ(top.dims, (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  const auto sky = costalk(skyscraper(a1, 0), 0, CostalkMode::All, 8);
  EXPECT_EQ(sky.generator_degrees, std::vector<int>{0});
}

TEST(Hom, TwoCodePathsAgree) {
  const auto a2 = block_graph(CartanType::A, 2);
  for (const Sheaf& s : {structure_sheaf(a2), skyscraper(a2, 4, 2)}) {
    for (std::size_t y = 0; y < a2->vertex_count(); ++y) {
      const auto from = hom_from_skyscraper(s, y, 8);
      const auto cs = costalk(s, y, CostalkMode::All, 8);
      EXPECT_EQ(from.dims, cs.dims);
      EXPECT_EQ(from.generator_degrees, cs.generator_degrees);
    }
  }
  // structure sheaf of A1 at e: the kernel is the label times S
  const Sheaf s = structure_sheaf(block_graph(CartanType::A, 1));
  EXPECT_EQ(hom_from_skyscraper(s, 0, 6).generator_degrees, std::vector<int>{2});
}

TEST(Hom, ToSkyscraperIsDualOfStalk) {
  const auto a1 = block_graph(CartanType::A, 1);
  const auto h = hom_to_skyscraper(skyscraper(a1, 1, 4), 1, -6, 2);
  EXPECT_EQ(h.generator_degrees, std::vector<int>{-4});
  EXPECT_EQ(h.dim(-6), 0u);
  EXPECT_EQ(h.dim(-4), 1u);
  EXPECT_EQ(h.dim(0), 1u);
  EXPECT_EQ(hom_to_skyscraper(skyscraper(a1, 1), 0, 0, 4).dims, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(SheafValidation, RejectsBadRestrictions) {
  auto g = std::make_shared<const MomentGraph>(a1_graph());
  const Polynomial x = Polynomial::variable(0);
  const Polynomial one(Rational(1));
  using R = std::vector<std::array<PolyMatrix, 2>>;
  // not reduced
  EXPECT_THROW(Sheaf(g, {{0}, {2}}, {{0}}, R{{PolyMatrix{{one}}, PolyMatrix{{x}}}}), std::invalid_argument);
  // wrong degree
  EXPECT_THROW(Sheaf(g, {{0}, {0}}, {{2}}, R{{PolyMatrix{{one}}, PolyMatrix{{one}}}}), std::invalid_argument);
  EXPECT_THROW(Sheaf(g, {{0}, {0}}, {{0}}, R{{PolyMatrix{{one, one}}, PolyMatrix{{one}}}}), std::invalid_argument);
}
