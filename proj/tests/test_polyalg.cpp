#include <gtest/gtest.h>

#include <random>

#include "msh/graded.hpp"
#include "msh/linalg.hpp"
#include "msh/polynomial.hpp"
#include "msh/rational.hpp"

using namespace msh;

namespace {

Polynomial var(int i) { return Polynomial::variable(i); }

// Counts exponent vectors of length n summing to k by brute force over [0,k]^n.
std::size_t brute_force_monomial_count(int n, int k) {
  std::size_t count = 0;
  std::vector<int> e(n, 0);
  while (true) {
    int s = 0;
    for (int x : e) s += x;
    if (s == k) ++count;
    int i = 0;
    while (i < n && e[i] == k) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return count;
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Polynomial random_homogeneous(std::mt19937& rng, int n, int degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Polynomial p;
  for (const auto& m : degree_slice(n, degree).monomials()) p.add_term(m, Rational(coeff(rng)));
  return p;
}

}  // namespace

TEST(Rational, ArithmeticAndParse) {
  EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("+2"), Rational(2));
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ((Rational(2, 3) * Rational(9, 4)).str(), "3/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
}

TEST(Rational, SpillsToBigAndBack) {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_EQ(sq.str(), "21267647932558653966460912964485513216");
  Rational back = sq / big;
  EXPECT_EQ(back, big);
  EXPECT_EQ(back.to_int64(), std::int64_t{1} << 62);
  EXPECT_EQ(sq - sq, Rational(0));
  EXPECT_TRUE((sq - sq).is_zero());
}

TEST(GradedComponentBasis, Constants) {
  auto b = graded_component_basis(PolyRing(1), 0);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].total_exponent(), 0);
}

TEST(GradedComponentBasis, TwoVariablesDegreeFourIsLex) {
  auto b = graded_component_basis(PolyRing(2), 4);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].exponents(2), (std::vector<int>{2, 0}));
  EXPECT_EQ(b[1].exponents(2), (std::vector<int>{1, 1}));
  EXPECT_EQ(b[2].exponents(2), (std::vector<int>{0, 2}));
}

TEST(GradedComponentBasis, ThreeVariablesDegreeSixMatchesEnumeration) {
  const std::size_t oracle = brute_force_monomial_count(3, 3);
  EXPECT_EQ(oracle, 10u);
  EXPECT_EQ(graded_component_basis(PolyRing(3), 6).size(), oracle);
}

TEST(GradedComponentBasis, OddDegreeRejected) {
  try {
    graded_component_basis(PolyRing(2), 3);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "odd degree has empty basis by convention violation");
  }
}

TEST(GradedComponentBasis, SliceDimensionsAreBinomial) {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 20; d += 2) {
      EXPECT_EQ(graded_component_basis(PolyRing(n), d).size(), binomial(d / 2 + n - 1, n - 1))
          << "n=" << n << " d=" << d;
      EXPECT_EQ(brute_force_monomial_count(n, d / 2), binomial(d / 2 + n - 1, n - 1));
    }
  }
}

TEST(ReduceModLinear, Examples) {
  const Polynomial x = var(0), y = var(1);
  EXPECT_TRUE(reduce_mod_linear(x, LinearForm::from_ints({1, 0})).is_zero());
  EXPECT_EQ(reduce_mod_linear(x + y, LinearForm::from_ints({1, -1})), y * Rational(2));
  const LinearForm ell = LinearForm::from_ints({1, 2});
  const Polynomial r = reduce_mod_linear(x * y, ell);
  EXPECT_EQ(r, y * y * Rational(-2));
  // Oracle: the difference must be divisible by the form.
  EXPECT_TRUE(divide_by_linear(x * y - r, ell).has_value());
  EXPECT_FALSE(r.contains_variable(0));
}

TEST(ReduceModLinear, ZeroFormRejected) {
  try {
    reduce_mod_linear(var(0), std::vector<Rational>{0, 0});
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "zero linear form");
  }
}

TEST(ReduceModLinear, IdealMembershipProperty) {
  std::mt19937 rng(20241016);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<int> c(-2, 2);
      std::vector<Rational> coeffs;
      for (int i = 0; i < n; ++i) coeffs.emplace_back(c(rng));
      if (std::all_of(coeffs.begin(), coeffs.end(), [](auto& q) { return q.is_zero(); })) {
        coeffs[n - 1] = 1;
      }
      const LinearForm ell(coeffs);
      const int d = 2 * (trial % 4);
      const Polynomial p = random_homogeneous(rng, n, d);
      const Polynomial q = random_homogeneous(rng, n, d + 2);
      const LinearReducer red(ell);
      EXPECT_EQ(red.reduce(p * ell.as_polynomial() + q), red.reduce(q));
      EXPECT_FALSE(red.reduce(q).contains_variable(ell.pivot()));
      // Algebra map modulo the ideal.
      EXPECT_EQ(red.reduce(red.reduce(p) * red.reduce(q)), red.reduce(p * q));
    }
  }
}

TEST(DivideByLinear, ExactAndInexact) {
  const Polynomial x = var(0), y = var(1);
  const LinearForm ell = LinearForm::from_ints({1, -1});
  auto q = divide_by_linear(x * x - y * y, ell);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, x + y);
  EXPECT_FALSE(divide_by_linear(x * x + y * y, ell).has_value());
}

TEST(LinearForm, Primitive) {
  LinearForm f({Rational(-1, 2), Rational(3, 4)});
  EXPECT_EQ(f.primitive(), LinearForm::from_ints({2, -3}));
  EXPECT_TRUE(f.proportional_to(LinearForm::from_ints({2, -3})));
}

TEST(KernelBasis, Examples) {
  EXPECT_TRUE(kernel_basis(RationalMatrix::identity(2)).empty());
  EXPECT_EQ(kernel_basis(RationalMatrix(2, 3)).size(), 3u);
  auto m = RationalMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}, 3);
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  // Oracle: brute-force search of small integer vectors in the null space.
  std::vector<Vector> found;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        Vector v{a, b, c};
        if (!is_zero_vector(v) && is_zero_vector(m.apply(v))) found.push_back(v);
      }
  ASSERT_EQ(found.size(), 2u);  // +-(1,-1,1)
  Subspace line(3);
  line.insert(found[0]);
  EXPECT_TRUE(line.contains(k[0]));
  EXPECT_EQ(k[0], (Vector{1, -1, 1}));
}

TEST(KernelBasis, RankNullity) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + trial % 5, n = 1 + (trial * 3) % 7;
    RationalMatrix m(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = c(rng) * (trial % 3 == 0 ? static_cast<int>(j % 2) : 1);
    const auto k = kernel_basis(m);
    EXPECT_EQ(m.rank() + k.size(), n);
    for (const auto& v : k) EXPECT_TRUE(is_zero_vector(m.apply(v)));
    EXPECT_EQ(m.rref(), m.rref().rref());
  }
}

TEST(ImageComplement, Examples) {
  const std::vector<Vector> e = {{1, 0}, {0, 1}};
  EXPECT_TRUE(image_complement(e, e, 2).empty());
  EXPECT_EQ(image_complement(e, {}, 2).size(), 2u);
  auto c = image_complement({{1, 0}, {1, 1}}, {{1, 1}}, 2);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (Vector{1, 0}));
  try {
    image_complement({{1, 0}}, {{0, 1}}, 2);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "not a subspace");
  }
}

TEST(LinearSolver, SolvesOrRejects) {
  auto a = RationalMatrix::from_rows({{1, 2}, {2, 4}, {0, 1}}, 2);
  LinearSolver s(a);
  EXPECT_EQ(s.rank(), 2u);
  auto x = s.solve({3, 6, 1});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a.apply(*x), (Vector{3, 6, 1}));
  EXPECT_FALSE(s.solve({1, 0, 0}).has_value());
}

TEST(GradedFree, EncodeDecodeRoundTrip) {
  GradedFree f(2, {0, 2});
  std::vector<Polynomial> comps = {var(0) * var(1) - var(1) * var(1), var(0) * Rational(3)};
  const Vector v = f.encode(comps, 4);
  EXPECT_EQ(v.size(), 3u + 2u);
  EXPECT_EQ(f.decode(v, 4), comps);
  const Vector w = f.multiply_variable(v, 4, 1);
  EXPECT_EQ(f.decode(w, 6)[1], var(0) * var(1) * Rational(3));
}

TEST(GradedFree, QuotientModuleReduces) {
  auto red = std::make_shared<LinearReducer>(LinearForm::from_ints({1, -1}));
  GradedFree f(2, {0}, red);
  EXPECT_EQ(f.dim(4), 1u);
  const Vector v = f.encode({var(0) * var(0)}, 4);
  EXPECT_EQ(f.decode(v, 4)[0], var(1) * var(1));
  const Vector w = f.multiply_variable(f.encode({Polynomial(1)}, 0), 0, 0);
  EXPECT_EQ(f.decode(w, 2)[0], var(1));
}

TEST(MinimalGenerators, IdealOfTwoVariables) {
  // The maximal ideal (x, y) in Q[x, y]: two generators in degree 2, none later.
  GradedFree s(2, {0});
  MinimalGenerators mg(s);
  EXPECT_TRUE(mg.add_degree(0, {}).empty());
  auto g2 = mg.add_degree(2, {s.encode({var(0)}, 2), s.encode({var(1)}, 2)});
  EXPECT_EQ(g2.size(), 2u);
  auto g4 = mg.add_degree(4, {s.encode({var(0) * var(1)}, 4)});
  EXPECT_TRUE(g4.empty());
  EXPECT_EQ(mg.current_basis().size(), 3u);
}
